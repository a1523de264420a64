#include "afsm/partition_refinement.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace afsm {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

// Paige-Tarjan refinement. Q-blocks are the fine partition stored as
// contiguous ranges of `elems`; X-blocks ("compound" blocks) are unions of
// Q-blocks. Each X-block with two or more Q-blocks is a pending splitter.
class Refiner {
public:
    Refiner(std::size_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> edges,
            std::span<const std::uint32_t> labels)
        : n_(n), src_(edges.size()), pred_off_(n + 1, 0), pred_(edges.size()), elems_(n), loc_(n), blk_(n),
          new_cnt_(n, kNone), old_cnt_(n, kNone) {
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const auto [s, d] = edges[e];
            if (s >= n || d >= n) {
                throw std::out_of_range("coarsest_stable_partition: edge endpoint out of range");
            }
            src_[e] = s;
            ++pred_off_[d + 1];
        }
        for (std::size_t i = 0; i < n; ++i) {
            pred_off_[i + 1] += pred_off_[i];
        }
        std::vector<std::uint32_t> fill(pred_off_.begin(), pred_off_.end() - 1);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            pred_[fill[edges[e].second]++] = static_cast<std::uint32_t>(e);
        }

        init_blocks(labels);
        init_counts(edges);
    }

    void run() {
        while (!worklist_.empty()) {
            const auto s = worklist_.back();
            auto& members = xblocks_[s].qblocks;
            if (members.size() < 2) {
                xblocks_[s].queued = false;
                worklist_.pop_back();
                continue;
            }
            // The splitter B is the smaller of two Q-blocks of S.
            auto b = members[0];
            if (block_size(members[1]) < block_size(b)) {
                b = members[1];
            }
            detach(b, s);
            if (xblocks_[s].qblocks.size() < 2) {
                xblocks_[s].queued = false;
                worklist_.pop_back();
            }
            split_against(b);
        }
    }

    std::vector<std::uint32_t> result() const {
        std::vector<std::uint32_t> out(n_);
        std::unordered_map<std::uint32_t, std::uint32_t> renumber;
        for (std::size_t i = 0; i < n_; ++i) {
            auto [it, _] = renumber.emplace(blk_[i], static_cast<std::uint32_t>(renumber.size()));
            out[i] = it->second;
        }
        return out;
    }

private:
    struct Block {
        std::uint32_t begin;
        std::uint32_t end;
        std::uint32_t mid;  // [begin, mid) are marked
        std::uint32_t xblock;
        std::uint32_t xpos;  // position inside xblocks_[xblock].qblocks
    };
    struct XBlock {
        std::vector<std::uint32_t> qblocks;
        bool queued = false;
    };

    std::uint32_t block_size(std::uint32_t b) const { return blocks_[b].end - blocks_[b].begin; }

    void init_blocks(std::span<const std::uint32_t> labels) {
        if (labels.size() != n_) {
            throw std::invalid_argument("coarsest_stable_partition: one label per node required");
        }
        std::vector<std::uint32_t> order(n_);
        for (std::uint32_t i = 0; i < n_; ++i) {
            order[i] = i;
        }
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return labels[a] < labels[b]; });
        xblocks_.emplace_back();
        for (std::uint32_t i = 0; i < n_;) {
            std::uint32_t j = i;
            while (j < n_ && labels[order[j]] == labels[order[i]]) {
                ++j;
            }
            const auto b = static_cast<std::uint32_t>(blocks_.size());
            blocks_.push_back({i, j, i, 0, static_cast<std::uint32_t>(xblocks_[0].qblocks.size())});
            xblocks_[0].qblocks.push_back(b);
            for (std::uint32_t k = i; k < j; ++k) {
                elems_[k] = order[k];
                loc_[order[k]] = k;
                blk_[order[k]] = b;
            }
            i = j;
        }
        // Stability against the universe: nodes with successors vs. sinks.
        std::vector<bool> has_succ(n_, false);
        for (auto s : src_) {
            has_succ[s] = true;
        }
        for (std::uint32_t x = 0; x < n_; ++x) {
            if (has_succ[x]) {
                mark(x);
            }
        }
        split_marked();
        enqueue_if_compound(0);
    }

    void init_counts(std::span<const std::pair<std::uint32_t, std::uint32_t>> edges) {
        edge_cnt_.resize(edges.size());
        std::vector<std::uint32_t> node_cnt(n_, kNone);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const auto x = src_[e];
            if (node_cnt[x] == kNone) {
                node_cnt[x] = static_cast<std::uint32_t>(counts_.size());
                counts_.push_back(0);
            }
            ++counts_[node_cnt[x]];
            edge_cnt_[e] = node_cnt[x];
        }
    }

    void enqueue_if_compound(std::uint32_t x) {
        auto& xb = xblocks_[x];
        if (!xb.queued && xb.qblocks.size() >= 2) {
            xb.queued = true;
            worklist_.push_back(x);
        }
    }

    // Move Q-block b out of compound block s into a fresh compound block.
    void detach(std::uint32_t b, std::uint32_t s) {
        auto& members = xblocks_[s].qblocks;
        const auto pos = blocks_[b].xpos;
        const auto last = members.back();
        members[pos] = last;
        blocks_[last].xpos = pos;
        members.pop_back();
        const auto fresh = static_cast<std::uint32_t>(xblocks_.size());
        xblocks_.emplace_back();
        xblocks_[fresh].qblocks.push_back(b);
        blocks_[b].xblock = fresh;
        blocks_[b].xpos = 0;
    }

    void mark(std::uint32_t x) {
        auto& block = blocks_[blk_[x]];
        const auto at = loc_[x];
        if (at < block.mid) {
            return;
        }
        if (block.mid == block.begin) {
            touched_.push_back(blk_[x]);
        }
        const auto other = elems_[block.mid];
        elems_[at] = other;
        loc_[other] = at;
        elems_[block.mid] = x;
        loc_[x] = block.mid;
        ++block.mid;
    }

    void split_marked() {
        for (auto b : touched_) {
            auto& block = blocks_[b];
            if (block.mid == block.end) {
                block.mid = block.begin;
                continue;
            }
            const auto fresh = static_cast<std::uint32_t>(blocks_.size());
            const Block marked{block.begin, block.mid, block.begin, block.xblock,
                               static_cast<std::uint32_t>(xblocks_[block.xblock].qblocks.size())};
            block.begin = block.mid;
            blocks_.push_back(marked);
            for (auto k = marked.begin; k < marked.end; ++k) {
                blk_[elems_[k]] = fresh;
            }
            xblocks_[marked.xblock].qblocks.push_back(fresh);
            enqueue_if_compound(marked.xblock);
        }
        touched_.clear();
    }

    void split_against(std::uint32_t b) {
        splitter_.assign(elems_.begin() + blocks_[b].begin, elems_.begin() + blocks_[b].end);

        // pre(B) with counts of edges into B per predecessor.
        for (auto y : splitter_) {
            for (auto k = pred_off_[y]; k < pred_off_[y + 1]; ++k) {
                const auto e = pred_[k];
                const auto x = src_[e];
                if (new_cnt_[x] == kNone) {
                    new_cnt_[x] = static_cast<std::uint32_t>(counts_.size());
                    counts_.push_back(0);
                    old_cnt_[x] = edge_cnt_[e];
                    pre_.push_back(x);
                }
                ++counts_[new_cnt_[x]];
            }
        }

        // Split by pre(B).
        for (auto x : pre_) {
            mark(x);
        }
        split_marked();

        // Split by pre(B) \ pre(S \ B): every edge of x into S goes into B.
        for (auto x : pre_) {
            if (counts_[new_cnt_[x]] == counts_[old_cnt_[x]]) {
                mark(x);
            }
        }
        split_marked();

        // Redirect edges into B to the new counters.
        for (auto y : splitter_) {
            for (auto k = pred_off_[y]; k < pred_off_[y + 1]; ++k) {
                const auto e = pred_[k];
                --counts_[edge_cnt_[e]];
                edge_cnt_[e] = new_cnt_[src_[e]];
            }
        }
        for (auto x : pre_) {
            new_cnt_[x] = kNone;
            old_cnt_[x] = kNone;
        }
        pre_.clear();
    }

    std::size_t n_;
    std::vector<std::uint32_t> src_;
    std::vector<std::uint32_t> pred_off_;
    std::vector<std::uint32_t> pred_;
    std::vector<std::uint32_t> elems_;
    std::vector<std::uint32_t> loc_;
    std::vector<std::uint32_t> blk_;
    std::vector<Block> blocks_;
    std::vector<XBlock> xblocks_;
    std::vector<std::uint32_t> worklist_;
    std::vector<std::uint32_t> touched_;
    std::vector<std::uint32_t> counts_;
    std::vector<std::uint32_t> edge_cnt_;
    std::vector<std::uint32_t> new_cnt_;
    std::vector<std::uint32_t> old_cnt_;
    std::vector<std::uint32_t> pre_;
    std::vector<std::uint32_t> splitter_;
};

}  // namespace

std::vector<std::uint32_t> coarsest_stable_partition(std::size_t node_count,
                                                     std::span<const std::pair<std::uint32_t, std::uint32_t>> edges,
                                                     std::span<const std::uint32_t> initial_labels) {
    if (node_count == 0) {
        return {};
    }
    Refiner r(node_count, edges, initial_labels);
    r.run();
    return r.result();
}

}  // namespace afsm
