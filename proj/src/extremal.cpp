#include "nnbox/extremal.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <mutex>
#include <thread>

#include "nnbox/error.hpp"

namespace nnbox {

const char* status_name(SearchStatus s) {
    switch (s) {
        case SearchStatus::WitnessFound: return "witness-found";
        case SearchStatus::MaximumProved: return "maximum-proved";
        case SearchStatus::BudgetExhausted: return "budget-exhausted";
    }
    return "?";
}

std::size_t candidate_count(std::size_t k, std::size_t n) {
    if (k > n) return 0;
    constexpr std::size_t kSat = std::numeric_limits<std::size_t>::max();
    // C(n,k) incrementally; each partial product is itself a binomial.
    unsigned __int128 c = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
        if (c > kSat) return kSat;
    }
    if (k >= 64) return kSat;
    c <<= k;
    return c > kSat ? kSat : static_cast<std::size_t>(c);
}

namespace {

struct PackedBox {
    std::uint64_t fixed;
    std::uint64_t values;
};

std::uint64_t deposit(std::uint64_t bits, std::uint64_t mask) {
    std::uint64_t out = 0;
    for (std::uint64_t m = mask; m != 0; m &= m - 1, bits >>= 1)
        if (bits & 1U) out |= m & (~m + 1);
    return out;
}

std::vector<PackedBox> packed_candidates(std::size_t k, std::size_t n) {
    if (k == 0 || k > n) throw GuardError("need 1 <= k <= n");
    if (n > kMaxSearchDimension) throw GuardError("n exceeds " + std::to_string(kMaxSearchDimension));
    const std::size_t count = candidate_count(k, n);
    if (count > kMaxCandidates)
        throw GuardError("C(n,k)*2^k = " + std::to_string(count) + " exceeds candidate limit " + std::to_string(kMaxCandidates));

    std::vector<PackedBox> out;
    out.reserve(count);
    const std::uint64_t top = n == 64 ? 0 : (std::uint64_t{1} << n);
    std::uint64_t prop = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
    while (true) {
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << k); ++v) out.push_back({prop, deposit(v, prop)});
        // Next mask with the same popcount (colex successor).
        const std::uint64_t low = prop & (~prop + 1);
        const std::uint64_t ripple = prop + low;
        if (ripple == 0) break;
        const std::uint64_t next = (((ripple ^ prop) >> 2) / low) | ripple;
        if (top != 0 && next >= top) break;
        if (next < prop) break;
        prop = next;
    }
    return out;
}

Box unpack(const PackedBox& p, std::size_t n) {
    BitSet fixed(n), values(n);
    for (std::size_t i = 0; i < n; ++i) {
        if ((p.fixed >> i) & 1U) {
            fixed.set(i);
            values.set(i, (p.values >> i) & 1U);
        }
    }
    return Box(std::move(fixed), std::move(values));
}

using Row = std::vector<std::uint64_t>;

class CompatibilityGraph {
public:
    explicit CompatibilityGraph(const std::vector<PackedBox>& c) : size_(c.size()), words_((c.size() + 63) / 64) {
        adj_.assign(size_ * words_, 0);
        for (std::size_t i = 0; i < size_; ++i) {
            for (std::size_t j = i + 1; j < size_; ++j) {
                const bool disjoint = (c[i].fixed & c[j].fixed & (c[i].values ^ c[j].values)) != 0;
                if (disjoint && c[i].fixed != c[j].fixed) {
                    adj_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
                    adj_[j * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
                }
            }
        }
    }
    std::size_t size() const { return size_; }
    std::size_t words() const { return words_; }
    const std::uint64_t* row(std::size_t v) const { return adj_.data() + v * words_; }

private:
    std::size_t size_;
    std::size_t words_;
    std::vector<std::uint64_t> adj_;
};

bool row_empty(const Row& r) {
    return std::all_of(r.begin(), r.end(), [](std::uint64_t w) { return w == 0; });
}

constexpr std::size_t kNoHolder = std::numeric_limits<std::size_t>::max();

/// Shared incumbent. Branch b may only replace an incumbent of equal size if
/// it precedes the holder, which makes the outcome equal to the sequential one.
struct Incumbent {
    std::mutex mu;
    std::atomic<std::size_t> size{0};
    std::atomic<std::size_t> holder{kNoHolder};
    std::vector<std::size_t> clique;

    bool offer(std::size_t branch, const std::vector<std::size_t>& c) {
        std::lock_guard lock(mu);
        const std::size_t s = c.size();
        if (s > size.load() || (s == size.load() && branch < holder.load())) {
            clique = c;
            holder.store(branch);
            size.store(s);
            return true;
        }
        return false;
    }
};

class Searcher {
public:
    Searcher(const SearchProblem& p, const CompatibilityGraph& g, std::size_t goal)
        : problem_(p), graph_(g), goal_(goal), start_(std::chrono::steady_clock::now()) {}

    Incumbent incumbent;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> exhausted{false};

    void colour_sort(const Row& p, std::vector<std::size_t>& order, std::vector<std::size_t>& colours) const {
        Row uncoloured = p;
        std::size_t colour = 0;
        while (!row_empty(uncoloured)) {
            ++colour;
            Row q = uncoloured;
            for (std::size_t w = 0; w < q.size(); ++w) {
                while (q[w] != 0) {
                    const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(q[w]));
                    q[w] &= q[w] - 1;
                    uncoloured[w] &= ~(std::uint64_t{1} << (v % 64));
                    const std::uint64_t* nb = graph_.row(v);
                    for (std::size_t x = w; x < q.size(); ++x) q[x] &= ~nb[x];
                    order.push_back(v);
                    colours.push_back(colour);
                }
            }
        }
    }

    bool prune(std::size_t branch, std::size_t bound) const {
        const std::size_t best = incumbent.size.load();
        const std::size_t holder = incumbent.holder.load();
        if (bound < best) return true;
        return bound == best && holder <= branch;
    }

    bool stop(std::size_t branch) const {
        if (exhausted.load(std::memory_order_relaxed)) return true;
        if (problem_.mode != SearchMode::FindWitness) return false;
        return incumbent.size.load() >= goal_ && incumbent.holder.load() <= branch;
    }

    bool charge_node() {
        const std::uint64_t count = nodes.fetch_add(1, std::memory_order_relaxed) + 1;
        if (problem_.node_limit && count > *problem_.node_limit) exhausted.store(true);
        if (problem_.time_limit && (count & 1023U) == 0 &&
            std::chrono::steady_clock::now() - start_ > *problem_.time_limit)
            exhausted.store(true);
        return !exhausted.load(std::memory_order_relaxed);
    }

    void expand(std::size_t branch, Row& p, std::vector<std::size_t>& clique) {
        if (!charge_node()) return;
        std::vector<std::size_t> order, colours;
        colour_sort(p, order, colours);
        for (std::size_t idx = order.size(); idx-- > 0;) {
            if (stop(branch)) return;
            if (prune(branch, clique.size() + colours[idx])) return;
            const std::size_t v = order[idx];
            clique.push_back(v);
            record(branch, clique);
            Row next(p.size());
            const std::uint64_t* nb = graph_.row(v);
            for (std::size_t w = 0; w < p.size(); ++w) next[w] = p[w] & nb[w];
            if (!row_empty(next) && !(problem_.mode == SearchMode::FindWitness && clique.size() >= goal_))
                expand(branch, next, clique);
            clique.pop_back();
            p[v / 64] &= ~(std::uint64_t{1} << (v % 64));
        }
    }

    void record(std::size_t branch, const std::vector<std::size_t>& clique) {
        const std::size_t best = incumbent.size.load();
        if (clique.size() > best || (clique.size() == best && branch < incumbent.holder.load())) {
            incumbent.offer(branch, clique);
        }
    }

    /// Top level: split the root colour order into independent branches.
    void run(Row root, std::vector<std::size_t> base) {
        incumbent.offer(kNoHolder - 1, base);
        if (problem_.mode == SearchMode::FindWitness && base.size() >= goal_) return;
        if (!charge_node()) return;

        std::vector<std::size_t> order, colours;
        colour_sort(root, order, colours);
        const std::size_t branches = order.size();

        // Branch b handles order[branches-1-b] with every later-coloured
        // vertex already removed from its candidate set.
        std::vector<Row> branch_sets(branches);
        Row remaining = root;
        for (std::size_t b = 0; b < branches; ++b) {
            const std::size_t v = order[branches - 1 - b];
            Row next(remaining.size());
            const std::uint64_t* nb = graph_.row(v);
            for (std::size_t w = 0; w < next.size(); ++w) next[w] = remaining[w] & nb[w];
            branch_sets[b] = std::move(next);
            remaining[v / 64] &= ~(std::uint64_t{1} << (v % 64));
        }

        auto work = [&](std::size_t b) {
            const std::size_t idx = branches - 1 - b;
            if (stop(b) || prune(b, base.size() + colours[idx])) return;
            std::vector<std::size_t> clique = base;
            clique.push_back(order[idx]);
            record(b, clique);
            if (problem_.mode == SearchMode::FindWitness && clique.size() >= goal_) return;
            if (!row_empty(branch_sets[b])) expand(b, branch_sets[b], clique);
        };

        const std::size_t jobs = std::max<std::size_t>(1, problem_.jobs);
        if (jobs == 1) {
            for (std::size_t b = 0; b < branches; ++b) work(b);
            return;
        }
        std::atomic<std::size_t> next_branch{0};
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < jobs; ++t) {
            pool.emplace_back([&] {
                for (std::size_t b; (b = next_branch.fetch_add(1)) < branches;) work(b);
            });
        }
        for (auto& th : pool) th.join();
    }

private:
    const SearchProblem& problem_;
    const CompatibilityGraph& graph_;
    std::size_t goal_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

std::vector<Box> enumerate_candidates(std::size_t k, std::size_t n) {
    std::vector<Box> out;
    for (const auto& p : packed_candidates(k, n)) out.push_back(unpack(p, n));
    return out;
}

SearchResult search(const SearchProblem& problem) {
    const auto candidates = packed_candidates(problem.k, problem.n);
    const CompatibilityGraph graph(candidates);

    const bool capped = bound_applies(problem.k, problem.n);
    SearchResult result;
    result.upper_bound_used = capped ? box_bound(problem.k) : candidates.size();

    std::size_t goal = std::numeric_limits<std::size_t>::max();
    if (problem.mode == SearchMode::FindWitness) goal = capped ? std::min(problem.target, box_bound(problem.k)) : problem.target;

    Searcher searcher(problem, graph, goal);
    Row root(graph.words(), 0);
    std::vector<std::size_t> base;
    if (problem.symmetry_breaking) {
        // Coordinate permutations and bit flips act transitively on boxes
        // with |prop| = k, so an optimal family may be assumed to contain
        // candidate 0.
        base.push_back(0);
        const std::uint64_t* nb = graph.row(0);
        std::copy(nb, nb + graph.words(), root.begin());
    } else {
        for (std::size_t v = 0; v < graph.size(); ++v) root[v / 64] |= std::uint64_t{1} << (v % 64);
    }
    searcher.run(std::move(root), std::move(base));

    std::vector<std::size_t> clique = searcher.incumbent.clique;
    std::sort(clique.begin(), clique.end());
    result.best_family.n = problem.n;
    result.best_family.k = problem.k;
    for (std::size_t v : clique) result.best_family.boxes.push_back(unpack(candidates[v], problem.n));
    result.best_size = clique.size();
    result.nodes_explored = searcher.nodes.load();

    if (problem.mode == SearchMode::FindWitness && result.best_size >= goal) {
        result.status = SearchStatus::WitnessFound;
    } else if (searcher.exhausted.load()) {
        result.status = SearchStatus::BudgetExhausted;
    } else {
        result.status = SearchStatus::MaximumProved;
    }

    if (!verify_family(result.best_family).ok()) throw std::logic_error("search produced a family that fails verification");
    return result;
}

bool certify(const BoxFamily& family, std::size_t claim) {
    return verify_family(family).conditions_ok() && family.size() >= claim;
}

std::string format_search_result(const SearchProblem& problem, const SearchResult& result, bool include_nodes) {
    std::string out = "# b(" + std::to_string(problem.k) + "," + std::to_string(problem.n) + ") ";
    out += result.status == SearchStatus::MaximumProved ? "= " : ">= ";
    out += std::to_string(result.best_size) + ", " + status_name(result.status) + "\n";
    out += "# status=" + std::string(status_name(result.status)) + "\n";
    if (include_nodes) out += "# nodes=" + std::to_string(result.nodes_explored) + "\n";
    out += "# n=" + std::to_string(problem.n) + " k=" + std::to_string(problem.k) + "\n";
    out += "# upper_bound=" + std::to_string(result.upper_bound_used) + "\n";
    for (const auto& b : result.best_family.boxes) out += b.to_word() + "\n";
    return out;
}

}  // namespace nnbox
