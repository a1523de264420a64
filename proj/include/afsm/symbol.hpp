#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace afsm {

/// True if `text` matches the token class `[A-Za-z0-9_.*'+-]+`.
bool is_token(std::string_view text) noexcept;

/// Interned input/output symbol. Equality is an integer compare; the
/// text lives in a process-wide table that only grows.
class Symbol {
public:
    /// Throws Error(InvalidToken) unless `name` is a token.
    static Symbol intern(std::string_view name);

    const std::string& name() const;
    std::uint32_t id() const noexcept { return id_; }

    friend bool operator==(Symbol a, Symbol b) noexcept { return a.id_ == b.id_; }
    friend auto operator<=>(Symbol a, Symbol b) noexcept { return a.id_ <=> b.id_; }

private:
    explicit Symbol(std::uint32_t id) noexcept : id_(id) {}
    std::uint32_t id_;
};

/// Finite set of symbols. Members are kept sorted by interned id, so
/// equality is extensional and union/difference are linear merges.
/// Use sorted_names() when a stable textual order is needed.
class SymbolSet {
public:
    SymbolSet() = default;
    SymbolSet(std::initializer_list<Symbol> members);
    explicit SymbolSet(std::vector<Symbol> members);

    static SymbolSet from_names(std::span<const std::string> names);
    static SymbolSet from_names(std::initializer_list<std::string_view> names);

    bool empty() const noexcept { return members_.empty(); }
    std::size_t size() const noexcept { return members_.size(); }
    bool contains(Symbol s) const noexcept;
    bool is_subset_of(const SymbolSet& other) const noexcept;

    std::span<const Symbol> members() const noexcept { return members_; }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    SymbolSet united(const SymbolSet& other) const;
    SymbolSet minus(const SymbolSet& other) const;
    void unite(const SymbolSet& other);

    std::vector<std::string> sorted_names() const;
    /// `{a,b,c}` with members in lexicographic order.
    std::string to_string() const;

    friend bool operator==(const SymbolSet&, const SymbolSet&) = default;
    /// Arbitrary but total order (by interned ids); not stable across runs.
    friend bool operator<(const SymbolSet& a, const SymbolSet& b) noexcept { return a.members_ < b.members_; }

    std::size_t hash() const noexcept;

private:
    std::vector<Symbol> members_;
};

/// Lexicographic order over sorted_names(); used for canonical output.
bool canonical_less(const SymbolSet& a, const SymbolSet& b);

struct SymbolSetHash {
    std::size_t operator()(const SymbolSet& s) const noexcept { return s.hash(); }
};

}  // namespace afsm
