#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "afsm/arena.hpp"

namespace afsm {

/// Machines and arenas read from one `.afsm` text.
struct ModelDocument {
    std::vector<FsmPtr> fsms;
    std::vector<Arena> arenas;
    std::string source;

    const Fsm* find_fsm(std::string_view name) const;
    const Arena* find_arena(std::string_view name) const;
};

/// Parses the line-oriented model format. Every error carries the line
/// and column of the offending directive. Transition endpoints must be
/// declared before use; arenas may name machines defined later.
ModelDocument parse(std::string_view text, std::string source = "<inline>");

/// Reads and parses a file. IO failures raise std::runtime_error.
ModelDocument parse_file(const std::string& path);

/// Canonical text: machines then arenas, each sorted by name.
std::string serialize(const ModelDocument& doc);
std::string serialize(const Fsm& fsm);
std::string serialize(const Arena& arena);

/// Value equality of machines and arenas, ignoring order of declaration.
bool structurally_equal(const ModelDocument& a, const ModelDocument& b);

struct DotOptions {
    std::string graph_name;  // defaults to the object's id
};

std::string export_dot(const Fsm& fsm, const DotOptions& options = {});
std::string export_dot(const Arena& arena, const DotOptions& options = {});

}  // namespace afsm
