#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nnbox/bitset.hpp"

namespace nnbox {

/// A sub-box B_1 x ... x B_n of {0,1}^n with each B_i one of {0}, {1}, {0,1}.
///
/// Stored as a fixed-coordinate mask plus the fixed values. Value bits outside
/// the fixed mask are kept at zero so structural equality is set equality.
class Box {
public:
    /// The full cube {0,1}^n.
    explicit Box(std::size_t n);
    /// Canonicalizes `values` against `fixed`; both must have size n >= 1.
    Box(BitSet fixed, BitSet values);

    /// Parses a word over {0,1,*}; character i is coordinate i+1.
    static Box from_word(std::string_view word);

    std::size_t dimension() const { return fixed_.size(); }
    const BitSet& fixed() const { return fixed_; }
    const BitSet& values() const { return values_; }

    /// prop B: the coordinates where the box is fixed.
    const BitSet& prop() const { return fixed_; }
    /// prop B as sorted 1-based coordinates.
    std::vector<std::size_t> prop_indices() const;
    std::size_t prop_size() const { return fixed_.count(); }

    /// Whether coordinate i (0-based) is fixed, and to which bit.
    bool is_fixed(std::size_t i) const { return fixed_.test(i); }
    bool value(std::size_t i) const { return values_.test(i); }

    /// Whether the point x (bit i = coordinate i+1) lies in the box.
    bool contains(const BitSet& point) const;

    std::string to_word() const;

    friend bool operator==(const Box&, const Box&) = default;

private:
    BitSet fixed_;
    BitSet values_;
};

/// prop as a string "{1,3,4}" or "{}".
std::string format_subset(const BitSet& s);

/// Empty geometric intersection: some coordinate is fixed in both boxes to
/// opposite values. Throws GuardError on mismatched dimensions.
bool is_disjoint(const Box& a, const Box& b);

/// A family of boxes in {0,1}^n with a nominal prop-size k.
struct BoxFamily {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<Box> boxes;

    std::size_t size() const { return boxes.size(); }
    bool empty() const { return boxes.empty(); }

    friend bool operator==(const BoxFamily&, const BoxFamily&) = default;
};

/// Builds a family from star-words; k is taken from the first box (0 if none).
BoxFamily make_family(std::size_t n, const std::vector<std::string>& words);

/// Reads the star-word text format: one word per line over {0,1,*}, `#` to
/// end of line is a comment, blank lines are ignored, whitespace inside a
/// word is ignored, CRLF is accepted. A `# n=<int>` (optionally followed by
/// `k=<int>`) header supplies the dimension of an empty family.
BoxFamily parse_family(std::string_view text);

/// Inverse of parse_family. Empty families are written as a single
/// `# n=<n> k=<k>` header line.
std::string serialize_family(const BoxFamily& family);

enum class Condition { Alpha, Beta, Gamma };

const char* condition_name(Condition c);

struct Violation {
    Condition condition;
    /// 0-based box indices: one for alpha, an ordered pair for beta/gamma.
    std::vector<std::size_t> indices;
};

struct VerifyReport {
    bool alpha_ok = true;
    bool beta_ok = true;
    bool gamma_ok = true;
    /// |family| <= 2^k - 2 whenever the three conditions hold and 3 <= k < n.
    bool bound_ok = true;
    /// Set when 3 <= k < n, the range where the bound applies.
    bool bound_applies = false;
    std::vector<Violation> violations;

    bool conditions_ok() const { return alpha_ok && beta_ok && gamma_ok; }
    bool ok() const { return conditions_ok() && bound_ok; }
};

/// Whether 3 <= k < n.
bool bound_applies(std::size_t k, std::size_t n);
/// 2^k - 2, saturating for k >= 63.
std::size_t box_bound(std::size_t k);

/// Checks (alpha) |prop B| = k, (beta) pairwise distinct props and
/// (gamma) pairwise disjointness, listing every violation.
VerifyReport verify_family(const BoxFamily& family);

/// Two copies of a verified family in dimension 2n+1 with prop-size k+1:
/// A -> A x {0} x {0,1}^n and A -> {0,1}^n x {1} x A. Throws
/// VerificationError if the input does not pass verify_family.
BoxFamily double_family(const BoxFamily& family);

}  // namespace nnbox
