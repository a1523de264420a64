#include "afsm/arena.hpp"

#include <algorithm>
#include <unordered_map>

namespace afsm {

Arena Arena::build(std::string id, std::vector<Vertex> vertices,
                   std::vector<std::pair<VertexIndex, VertexIndex>> edges) {
    if (!is_token(id)) {
        throw Error(ErrorCode::InvalidToken, "arena id '" + id + "' is not a valid token");
    }
    if (vertices.empty()) {
        throw Error(ErrorCode::EmptyArena, "arena '" + id + "' has no vertices");
    }
    std::unordered_map<std::string_view, VertexIndex> seen;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const auto& v = vertices[i];
        if (!is_token(v.id)) {
            throw Error(ErrorCode::InvalidToken, "vertex id '" + v.id + "' is not a valid token");
        }
        if (!v.machine) {
            throw Error(ErrorCode::UnknownMachine, "arena '" + id + "': vertex '" + v.id + "' has no machine");
        }
        if (!seen.emplace(v.id, static_cast<VertexIndex>(i)).second) {
            throw Error(ErrorCode::DuplicateName, "arena '" + id + "': vertex '" + v.id + "' declared twice");
        }
    }
    const auto n = vertices.size();
    for (auto [from, to] : edges) {
        if (from >= n || to >= n) {
            throw Error(ErrorCode::DanglingEdge, "arena '" + id + "': edge endpoint out of range");
        }
        if (from == to) {
            throw Error(ErrorCode::SelfLoop, "arena '" + id + "': self-loop on vertex '" + vertices[from].id + "'");
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    Arena a;
    a.id_ = std::move(id);
    a.vertices_ = std::move(vertices);
    a.edges_ = std::move(edges);
    a.preds_.resize(n);
    a.succs_.resize(n);
    for (auto [from, to] : a.edges_) {
        a.succs_[from].push_back(to);
        a.preds_[to].push_back(from);
    }
    for (auto& p : a.preds_) {
        std::sort(p.begin(), p.end());
    }
    return a;
}

std::optional<VertexIndex> Arena::find_vertex(std::string_view id) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (vertices_[i].id == id) {
            return static_cast<VertexIndex>(i);
        }
    }
    return std::nullopt;
}

Arena validate_arena(const RawArena& raw, const MachineLibrary& library) {
    if (!is_token(raw.id)) {
        throw Error(ErrorCode::InvalidToken, "arena id '" + raw.id + "' is not a valid token", raw.where);
    }
    if (raw.nodes.empty()) {
        throw Error(ErrorCode::EmptyArena, "arena '" + raw.id + "' has no vertices", raw.where);
    }
    std::vector<Vertex> vertices;
    std::unordered_map<std::string_view, VertexIndex> index;
    for (const auto& node : raw.nodes) {
        if (!is_token(node.vertex)) {
            throw Error(ErrorCode::InvalidToken, "vertex id '" + node.vertex + "' is not a valid token", node.where);
        }
        auto m = library.find(node.machine);
        if (m == library.end()) {
            throw Error(ErrorCode::UnknownMachine,
                        "arena '" + raw.id + "': vertex '" + node.vertex + "' references undefined machine '" +
                            node.machine + "'",
                        node.where);
        }
        if (!index.emplace(node.vertex, static_cast<VertexIndex>(vertices.size())).second) {
            throw Error(ErrorCode::DuplicateName, "arena '" + raw.id + "': vertex '" + node.vertex + "' declared twice",
                        node.where);
        }
        vertices.push_back({node.vertex, m->second});
    }
    std::vector<std::pair<VertexIndex, VertexIndex>> edges;
    for (const auto& e : raw.edges) {
        auto from = index.find(e.from);
        auto to = index.find(e.to);
        if (from == index.end() || to == index.end()) {
            const auto& missing = from == index.end() ? e.from : e.to;
            throw Error(ErrorCode::DanglingEdge,
                        "arena '" + raw.id + "': edge endpoint '" + missing + "' is not a vertex", e.where);
        }
        if (from->second == to->second) {
            throw Error(ErrorCode::SelfLoop, "arena '" + raw.id + "': self-loop on vertex '" + e.from + "'", e.where);
        }
        edges.emplace_back(from->second, to->second);
    }
    return Arena::build(raw.id, std::move(vertices), std::move(edges));
}

std::vector<std::string> predecessors(const Arena& arena, std::string_view vertex) {
    auto v = arena.find_vertex(vertex);
    if (!v) {
        throw Error(ErrorCode::UnknownVertex, "arena '" + arena.id() + "' has no vertex '" + std::string(vertex) + "'");
    }
    std::vector<std::string> out;
    for (auto p : arena.predecessors(*v)) {
        out.push_back(arena.vertex(p).id);
    }
    return out;
}

bool structurally_equal(const Arena& a, const Arena& b) {
    if (a.id() != b.id() || a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& va = a.vertices()[i];
        const auto& vb = b.vertices()[i];
        if (va.id != vb.id || !(*va.machine == *vb.machine)) {
            return false;
        }
    }
    return std::equal(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end());
}

}  // namespace afsm
