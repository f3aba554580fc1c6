#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nnbox/box.hpp"

namespace nnbox {

/// Largest candidate list (C(n,k) 2^k) the search will materialize.
inline constexpr std::size_t kMaxCandidates = 16384;
/// Candidate boxes are packed into single machine words.
inline constexpr std::size_t kMaxSearchDimension = 64;

enum class SearchMode { FindWitness, ProveMaximum };
enum class SearchStatus { WitnessFound, MaximumProved, BudgetExhausted };

const char* status_name(SearchStatus s);

struct SearchProblem {
    std::size_t k = 0;
    std::size_t n = 0;
    SearchMode mode = SearchMode::ProveMaximum;
    /// Witness size sought in FindWitness mode.
    std::size_t target = 0;
    std::optional<std::uint64_t> node_limit;
    std::optional<std::chrono::milliseconds> time_limit;
    /// Force the first chosen box to a fixed orbit representative.
    bool symmetry_breaking = true;
    /// Worker threads over top-level branches; results do not depend on it.
    std::size_t jobs = 1;
};

struct SearchResult {
    BoxFamily best_family;
    std::size_t best_size = 0;
    SearchStatus status = SearchStatus::BudgetExhausted;
    std::uint64_t nodes_explored = 0;
    /// 2^k - 2 when 3 <= k < n, otherwise the candidate count.
    std::size_t upper_bound_used = 0;
};

/// Every box with |prop| = k: prop sets in colex order, then value masks
/// (over the prop coordinates, lowest coordinate least significant) in
/// increasing order. Throws GuardError past kMaxCandidates.
std::vector<Box> enumerate_candidates(std::size_t k, std::size_t n);

/// C(n,k) 2^k without materializing the list; saturates on overflow.
std::size_t candidate_count(std::size_t k, std::size_t n);

/// Maximum clique over the compatibility graph of candidate boxes (adjacent
/// iff disjoint with distinct props), branch and bound with greedy colouring
/// bounds.
///
/// In FindWitness mode the search stops at the first family of size
/// min(target, 2^k - 2) (the cap only when 3 <= k < n). If it runs to
/// completion without stopping it has proved the maximum, and reports so.
/// ProveMaximum mode never uses the 2^k - 2 cap; its answer is exhaustive.
///
/// The returned family is the first optimal one in sequential search order,
/// independent of `jobs`.
SearchResult search(const SearchProblem& problem);

/// verify_family passes and |family| >= claim.
bool certify(const BoxFamily& family, std::size_t claim);

/// Star-word document with `# status=`, `# nodes=`, `# n=`, `# k=` headers.
std::string format_search_result(const SearchProblem& problem, const SearchResult& result, bool include_nodes = true);

}  // namespace nnbox
