#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "afsm/format.hpp"

namespace afsm {

namespace {

struct Word {
    std::string text;
    std::vector<std::string> members;  // when is_set
    bool is_set = false;
    Position where;
};

[[noreturn]] void syntax(const std::string& msg, Position where) {
    throw Error(ErrorCode::SyntaxError, msg, where);
}

// Splits a line into bare tokens and `{...}` sets. Comments start at '#'.
std::vector<Word> split(std::string_view line, std::size_t lineno) {
    std::vector<Word> words;
    std::size_t i = 0;
    auto at = [&](std::size_t col) { return Position{lineno, col + 1}; };
    while (i < line.size()) {
        const char c = line[i];
        if (c == '#') {
            break;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        Word w;
        w.where = at(i);
        if (c == '{') {
            w.is_set = true;
            const auto close = line.find('}', i);
            if (close == std::string_view::npos) {
                syntax("unterminated symbol set", w.where);
            }
            std::string_view body = line.substr(i + 1, close - i - 1);
            std::size_t j = 0;
            bool expect_item = false;
            while (true) {
                while (j < body.size() && (body[j] == ' ' || body[j] == '\t')) {
                    ++j;
                }
                const auto start = j;
                while (j < body.size() && body[j] != ',' && body[j] != ' ' && body[j] != '\t') {
                    ++j;
                }
                auto item = body.substr(start, j - start);
                while (j < body.size() && (body[j] == ' ' || body[j] == '\t')) {
                    ++j;
                }
                if (item.empty()) {
                    if (expect_item || j < body.size()) {
                        syntax("empty element in symbol set", at(i + 1 + start));
                    }
                    break;
                }
                if (!is_token(item)) {
                    syntax("'" + std::string(item) + "' is not a valid symbol", at(i + 1 + start));
                }
                w.members.emplace_back(item);
                if (j == body.size()) {
                    break;
                }
                if (body[j] != ',') {
                    syntax("expected ',' in symbol set", at(i + 1 + j));
                }
                ++j;
                expect_item = true;
            }
            i = close + 1;
        } else if (c == '}' || c == ',') {
            syntax(std::string("unexpected '") + c + "'", w.where);
        } else {
            const auto start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#' &&
                   line[i] != '{') {
                ++i;
            }
            w.text = std::string(line.substr(start, i - start));
            if (!is_token(w.text)) {
                syntax("'" + w.text + "' is not a valid token", w.where);
            }
        }
        words.push_back(std::move(w));
    }
    return words;
}

void expect_shape(const std::vector<Word>& w, std::string_view shape) {
    // shape: one char per argument after the keyword, 't' token or 's' set.
    if (w.size() != shape.size() + 1) {
        syntax("'" + w[0].text + "' takes " + std::to_string(shape.size()) + " argument(s)",
               w.size() > shape.size() + 1 ? w[shape.size() + 1].where : w[0].where);
    }
    for (std::size_t k = 0; k < shape.size(); ++k) {
        const bool want_set = shape[k] == 's';
        if (w[k + 1].is_set != want_set) {
            syntax(want_set ? "expected a symbol set" : "expected a name", w[k + 1].where);
        }
    }
}

class Parser {
public:
    ModelDocument run(std::string_view text, std::string source) {
        std::size_t lineno = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const auto nl = text.find('\n', pos);
            const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
            ++lineno;
            auto words = split(line, lineno);
            if (!words.empty()) {
                if (words[0].is_set) {
                    syntax("expected a directive", words[0].where);
                }
                directive(words);
            }
            if (nl == std::string_view::npos) {
                break;
            }
            pos = nl + 1;
        }
        if (fsm_ || arena_) {
            syntax("missing 'end' for '" + (fsm_ ? fsm_->id : arena_->id) + "'", Position{lineno, 1});
        }

        ModelDocument doc;
        doc.source = std::move(source);
        MachineLibrary library;
        for (auto& raw : fsms_) {
            auto m = std::make_shared<const Fsm>(validate_fsm(raw));
            library.emplace(m->id(), m);
            doc.fsms.push_back(std::move(m));
        }
        for (auto& raw : arenas_) {
            doc.arenas.push_back(validate_arena(raw, library));
        }
        return doc;
    }

private:
    void directive(const std::vector<Word>& w) {
        const auto& kw = w[0].text;
        if (fsm_) {
            fsm_directive(kw, w);
        } else if (arena_) {
            arena_directive(kw, w);
        } else if (kw == "fsm" || kw == "arena") {
            expect_shape(w, "t");
            if (!names_.insert(kw + ":" + w[1].text).second) {
                throw Error(ErrorCode::DuplicateName, kw + " '" + w[1].text + "' defined twice", w[0].where);
            }
            if (kw == "fsm") {
                fsm_.emplace();
                fsm_->id = w[1].text;
                fsm_->where = w[0].where;
            } else {
                arena_.emplace();
                arena_->id = w[1].text;
                arena_->where = w[0].where;
            }
        } else {
            syntax("expected 'fsm' or 'arena', found '" + kw + "'", w[0].where);
        }
    }

    void fsm_directive(const std::string& kw, const std::vector<Word>& w) {
        auto& f = *fsm_;
        if (kw == "inputs" || kw == "outputs") {
            expect_shape(w, "s");
            auto& seen = kw == "inputs" ? seen_inputs_ : seen_outputs_;
            if (seen) {
                syntax("'" + kw + "' given twice", w[0].where);
            }
            seen = true;
            (kw == "inputs" ? f.inputs : f.outputs) = w[1].members;
        } else if (kw == "state") {
            expect_shape(w, "ts");
            f.states.push_back({w[1].text, w[2].members, w[0].where});
            declared_.insert(w[1].text);
        } else if (kw == "initial") {
            expect_shape(w, "t");
            if (f.initial) {
                syntax("'initial' given twice", w[0].where);
            }
            f.initial = w[1].text;
            f.initial_where = w[0].where;
        } else if (kw == "trans") {
            expect_shape(w, "tst");
            for (const auto* end : {&w[1], &w[3]}) {
                if (!declared_.contains(end->text)) {
                    throw Error(ErrorCode::MissingState,
                                "machine '" + f.id + "': state '" + end->text + "' is not declared", w[0].where);
                }
            }
            f.transitions.push_back({w[1].text, w[2].members, w[3].text, w[0].where});
        } else if (kw == "end") {
            expect_shape(w, "");
            fsms_.push_back(std::move(f));
            fsm_.reset();
            declared_.clear();
            seen_inputs_ = seen_outputs_ = false;
        } else {
            syntax("unknown directive '" + kw + "' in fsm", w[0].where);
        }
    }

    void arena_directive(const std::string& kw, const std::vector<Word>& w) {
        auto& a = *arena_;
        if (kw == "node") {
            expect_shape(w, "tt");
            a.nodes.push_back({w[1].text, w[2].text, w[0].where});
        } else if (kw == "edge") {
            expect_shape(w, "tt");
            a.edges.push_back({w[1].text, w[2].text, w[0].where});
        } else if (kw == "end") {
            expect_shape(w, "");
            arenas_.push_back(std::move(a));
            arena_.reset();
        } else {
            syntax("unknown directive '" + kw + "' in arena", w[0].where);
        }
    }

    std::optional<RawFsm> fsm_;
    std::optional<RawArena> arena_;
    std::set<std::string> declared_;
    std::set<std::string> names_;
    bool seen_inputs_ = false;
    bool seen_outputs_ = false;
    std::vector<RawFsm> fsms_;
    std::vector<RawArena> arenas_;
};

}  // namespace

const Fsm* ModelDocument::find_fsm(std::string_view name) const {
    for (const auto& f : fsms) {
        if (f->id() == name) {
            return f.get();
        }
    }
    return nullptr;
}

const Arena* ModelDocument::find_arena(std::string_view name) const {
    for (const auto& a : arenas) {
        if (a.id() == name) {
            return &a;
        }
    }
    return nullptr;
}

ModelDocument parse(std::string_view text, std::string source) {
    return Parser{}.run(text, std::move(source));
}

ModelDocument parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

}  // namespace afsm
