#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nnbox/box.hpp"
#include "nnbox/rational.hpp"

namespace nnbox {

inline constexpr std::size_t kMaxSimplexDimension = 8;

using RationalPoint = std::vector<Rational>;

/// d+1 affinely independent points of Q^d.
class Simplex {
public:
    /// Throws GuardError on inconsistent sizes, d = 0, d > kMaxSimplexDimension,
    /// or affinely dependent vertices.
    explicit Simplex(std::vector<RationalPoint> vertices);

    std::size_t dimension() const { return vertices_.size() - 1; }
    const std::vector<RationalPoint>& vertices() const { return vertices_; }

private:
    std::vector<RationalPoint> vertices_;
};

/// The affine hyperplane {x : normal . x = offset} with integer coefficients of
/// content 1 and first nonzero normal entry positive. Its 0-side is
/// normal . x < offset and its 1-side is normal . x > offset.
struct Hyperplane {
    std::vector<BigInt> normal;
    BigInt offset;

    /// Scales (normal, offset) to the canonical form; throws GuardError for a
    /// zero normal.
    static Hyperplane canonical(const std::vector<Rational>& normal, const Rational& offset);

    /// sign(normal . x - offset).
    int side(const RationalPoint& x) const;

    /// "a_1 ... a_d c".
    std::string to_row() const;

    friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
    friend bool operator<(const Hyperplane& a, const Hyperplane& b) {
        if (a.normal != b.normal) return a.normal < b.normal;
        return a.offset < b.offset;
    }
};

/// The d+1 facet hyperplanes; entry i omits vertex i.
std::vector<Hyperplane> facet_hyperplanes(const Simplex& s);

struct PairSeparation {
    std::size_t first = 0;
    std::size_t second = 0;
    /// Least common facet hyperplane leaving the two simplices on opposite
    /// closed sides, if any.
    std::optional<Hyperplane> witness;
};

struct NeighbourlyReport {
    bool nearly_neighbourly = true;
    /// One entry per unordered pair (i < j), in lexicographic pair order.
    std::vector<PairSeparation> pairs;
};

/// Throws GuardError when dimensions differ.
NeighbourlyReport check_nearly_neighbourly(const std::vector<Simplex>& family);

struct PairWitness {
    std::size_t first = 0;
    std::size_t second = 0;
    /// 0-based index into EncodingResult::hyperplanes.
    std::size_t hyperplane = 0;
};

struct EncodingResult {
    /// Distinct facet hyperplanes sorted by canonical coefficients.
    std::vector<Hyperplane> hyperplanes;
    /// B(sigma) per simplex in input order; k = d+1, n = hyperplanes.size().
    BoxFamily family;
    std::vector<PairWitness> pair_witnesses;
};

/// Box family over the facet-hyperplane arrangement. Throws VerificationError
/// when the family is not nearly neighbourly or the encoded boxes fail
/// verify_family.
EncodingResult encode_boxes(const std::vector<Simplex>& family);

/// Blocks of d+1 lines separated by blank lines; each line holds d rationals
/// (`p/q` or integers). An optional `# d=<int>` header fixes d.
std::vector<Simplex> parse_simplices(std::string_view text);

/// `# hyperplanes: a_1 ... a_d c (a . x = c)` then one row per hyperplane.
std::string format_hyperplanes(const std::vector<Hyperplane>& hyperplanes);

}  // namespace nnbox
