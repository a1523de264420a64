#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "afsm/fsm.hpp"

namespace afsm {

using VertexIndex = std::uint32_t;
using FsmPtr = std::shared_ptr<const Fsm>;
/// Machines by name, as available to an arena being validated.
using MachineLibrary = std::map<std::string, FsmPtr, std::less<>>;

struct Vertex {
    std::string id;
    FsmPtr machine;
};

struct RawNode {
    std::string vertex;
    std::string machine;
    std::optional<Position> where;
};

struct RawEdge {
    std::string from;
    std::string to;
    std::optional<Position> where;
};

struct RawArena {
    std::string id;
    std::vector<RawNode> nodes;
    std::vector<RawEdge> edges;
    std::optional<Position> where;
};

/// Self-loop-free directed graph of machines. Vertices keep their
/// declaration order, which is also the component order of composite
/// states. Edges are sorted and unique.
class Arena {
public:
    static Arena build(std::string id, std::vector<Vertex> vertices,
                       std::vector<std::pair<VertexIndex, VertexIndex>> edges);

    const std::string& id() const noexcept { return id_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    std::span<const Vertex> vertices() const noexcept { return vertices_; }
    const Vertex& vertex(VertexIndex v) const { return vertices_.at(v); }
    const Fsm& machine(VertexIndex v) const { return *vertices_.at(v).machine; }
    std::optional<VertexIndex> find_vertex(std::string_view id) const;

    std::span<const std::pair<VertexIndex, VertexIndex>> edges() const noexcept { return edges_; }
    /// Sources of edges into `v`, ascending.
    std::span<const VertexIndex> predecessors(VertexIndex v) const { return preds_.at(v); }
    /// Targets of edges out of `v`, ascending.
    std::span<const VertexIndex> successors(VertexIndex v) const { return succs_.at(v); }

private:
    Arena() = default;

    std::string id_;
    std::vector<Vertex> vertices_;
    std::vector<std::pair<VertexIndex, VertexIndex>> edges_;
    std::vector<std::vector<VertexIndex>> preds_;
    std::vector<std::vector<VertexIndex>> succs_;
};

Arena validate_arena(const RawArena& raw, const MachineLibrary& library);

/// Pre(A, v) by vertex id. Throws Error(UnknownVertex).
std::vector<std::string> predecessors(const Arena& arena, std::string_view vertex);

/// Structural equality: same ids, same machines (by value), same edges.
bool structurally_equal(const Arena& a, const Arena& b);

}  // namespace afsm
