#include "afsm/symbol.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "afsm/error.hpp"

namespace afsm {

namespace {

struct SymbolTable {
    std::shared_mutex mutex;
    std::deque<std::string> names;  // deque: references stay valid on growth
    std::unordered_map<std::string_view, std::uint32_t> ids;
};

SymbolTable& table() {
    static SymbolTable t;
    return t;
}

bool is_token_char(char c) noexcept {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '.' ||
           c == '*' || c == '\'' || c == '+' || c == '-';
}

}  // namespace

bool is_token(std::string_view text) noexcept {
    return !text.empty() && std::all_of(text.begin(), text.end(), is_token_char);
}

Symbol Symbol::intern(std::string_view name) {
    if (!is_token(name)) {
        throw Error(ErrorCode::InvalidToken, "'" + std::string(name) + "' is not a valid symbol");
    }
    auto& t = table();
    {
        std::shared_lock lock(t.mutex);
        if (auto it = t.ids.find(name); it != t.ids.end()) {
            return Symbol(it->second);
        }
    }
    std::unique_lock lock(t.mutex);
    if (auto it = t.ids.find(name); it != t.ids.end()) {
        return Symbol(it->second);
    }
    const auto id = static_cast<std::uint32_t>(t.names.size());
    const std::string& stored = t.names.emplace_back(name);
    t.ids.emplace(stored, id);
    return Symbol(id);
}

const std::string& Symbol::name() const {
    auto& t = table();
    std::shared_lock lock(t.mutex);
    return t.names[id_];
}

SymbolSet::SymbolSet(std::initializer_list<Symbol> members) : SymbolSet(std::vector<Symbol>(members)) {}

SymbolSet::SymbolSet(std::vector<Symbol> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

SymbolSet SymbolSet::from_names(std::span<const std::string> names) {
    std::vector<Symbol> out;
    out.reserve(names.size());
    for (const auto& n : names) {
        out.push_back(Symbol::intern(n));
    }
    return SymbolSet(std::move(out));
}

SymbolSet SymbolSet::from_names(std::initializer_list<std::string_view> names) {
    std::vector<Symbol> out;
    out.reserve(names.size());
    for (auto n : names) {
        out.push_back(Symbol::intern(n));
    }
    return SymbolSet(std::move(out));
}

bool SymbolSet::contains(Symbol s) const noexcept {
    return std::binary_search(members_.begin(), members_.end(), s);
}

bool SymbolSet::is_subset_of(const SymbolSet& other) const noexcept {
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

SymbolSet SymbolSet::united(const SymbolSet& other) const {
    SymbolSet out;
    out.members_.reserve(members_.size() + other.members_.size());
    std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                   std::back_inserter(out.members_));
    return out;
}

SymbolSet SymbolSet::minus(const SymbolSet& other) const {
    SymbolSet out;
    std::set_difference(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                        std::back_inserter(out.members_));
    return out;
}

void SymbolSet::unite(const SymbolSet& other) {
    if (other.members_.empty()) {
        return;
    }
    *this = united(other);
}

std::vector<std::string> SymbolSet::sorted_names() const {
    std::vector<std::string> out;
    out.reserve(members_.size());
    for (auto s : members_) {
        out.push_back(s.name());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string SymbolSet::to_string() const {
    std::string out = "{";
    bool first = true;
    for (const auto& n : sorted_names()) {
        if (!first) {
            out += ',';
        }
        out += n;
        first = false;
    }
    out += '}';
    return out;
}

std::size_t SymbolSet::hash() const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto s : members_) {
        h ^= s.id();
        h *= 0x100000001b3ULL;
    }
    return h ^ members_.size();
}

bool canonical_less(const SymbolSet& a, const SymbolSet& b) {
    return a.sorted_names() < b.sorted_names();
}

}  // namespace afsm
