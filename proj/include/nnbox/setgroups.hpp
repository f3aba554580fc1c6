#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nnbox/bitset.hpp"

namespace nnbox {

/// Largest v accepted by generate_group / preimage_group. Members of G_v have
/// 2^{v+1} - 1 possible elements and there are 2^{v+1} of them, so storage
/// grows as 4^v bits.
inline constexpr std::size_t kMaxGroupOrder = 12;
/// Largest ground set for preimage_group.
inline constexpr std::size_t kMaxGroundSet = std::size_t{1} << 16;

/// Distinct subsets of [n]; element e is bit e-1.
class SetFamily {
public:
    explicit SetFamily(std::size_t n = 0) : n_(n) {}
    /// Throws GuardError on a duplicate or a set of the wrong ground size.
    SetFamily(std::size_t n, std::vector<BitSet> sets);

    static SetFamily from_lists(std::size_t n, const std::vector<std::vector<std::size_t>>& lists);

    std::size_t ground_size() const { return n_; }
    const std::vector<BitSet>& sets() const { return sets_; }
    std::size_t size() const { return sets_.size(); }

    void add(BitSet s);
    bool contains(const BitSet& s) const;

    /// Members sorted by (cardinality, then increasing elements).
    SetFamily sorted() const;

private:
    std::size_t n_;
    std::vector<BitSet> sets_;
};

struct GroupReport {
    std::size_t size = 0;
    bool contains_empty = false;
    bool closed = false;
    bool is_group = false;
    /// First pair (i, j) of member indices whose symmetric difference is missing.
    std::optional<std::pair<std::size_t, std::size_t>> closure_witness;
    /// Common cardinality of the nonempty members, if they share one.
    std::optional<std::size_t> uniform_k;
    std::size_t v = 0;
    std::size_t bound = 0;
    bool bound_ok = true;
    bool half_intersections_ok = true;
};

/// Largest v with 2^v | k. Throws GuardError for k = 0.
std::size_t two_adic_order(std::size_t k);

/// Closure, uniformity, half-intersection and 2^{v+1} bound checks.
GroupReport check_group(const SetFamily& family);

/// G_0 = {{}, {1}}; G_{v+1} = {A#} u {K xor A#} u {{}, K} with
/// A# = A u (A + m_v) and K = (U G_v + m_v) u {2 m_v + 1}.
/// Ground set is [2^{v+1} - 1].
SetFamily generate_group(std::size_t v);

/// {f^{-1}(A) : A in G_v} for f(x) = ceil(x / p), p odd, over [p (2^{v+1} - 1)].
SetFamily preimage_group(std::size_t v, std::size_t p);

/// `# n=<n>` header, then one set per line as `1,2,5` or `{}`.
std::string serialize_sets(const SetFamily& family);
/// Accepts the same format; n comes from the header or the largest element.
SetFamily parse_sets(std::string_view text);

}  // namespace nnbox
