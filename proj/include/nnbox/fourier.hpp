#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nnbox/box.hpp"
#include "nnbox/rational.hpp"

namespace nnbox {

/// Largest dimension with dense storage.
inline constexpr std::size_t kMaxDenseDimension = 24;
/// Largest dimension for the quadratic convolution.
inline constexpr std::size_t kMaxConvolutionDimension = 12;

/// Integer-valued f: {0,1}^n -> Z stored densely. Index x is the point with
/// coordinate i+1 equal to bit i of x.
struct CubeFunction {
    std::size_t n = 0;
    std::vector<std::int64_t> values;

    CubeFunction() = default;
    /// The zero function; throws GuardError for n > kMaxDenseDimension.
    explicit CubeFunction(std::size_t n);
    CubeFunction(std::size_t n, std::vector<std::int64_t> values);

    std::size_t point_count() const { return values.size(); }
    bool is_indicator() const;

    friend bool operator==(const CubeFunction&, const CubeFunction&) = default;
};

/// Pointwise product with checked arithmetic.
CubeFunction pointwise_product(const CubeFunction& a, const CubeFunction& b);

/// Fourier coefficients held as integers: coefficient(S) = scaled[S] / 2^scale_log2.
/// Subsets S use the same bit encoding as points. transform() produces
/// scale_log2 = n; convolve() produces scale_log2 = 2n.
struct Spectrum {
    std::size_t n = 0;
    unsigned scale_log2 = 0;
    std::vector<std::int64_t> scaled;

    Rational coefficient(std::size_t subset) const { return dyadic(scaled.at(subset), scale_log2); }
    std::vector<std::size_t> support() const;
};

/// Exact equality of the represented coefficients, regardless of scaling.
bool same_coefficients(const Spectrum& a, const Spectrum& b);

/// f(x) = number of boxes containing x. Throws GuardError for n > kMaxDenseDimension.
CubeFunction indicator_sum(const BoxFamily& family);

/// scaled[S] = sum_x f(x) (-1)^{|S & x|}, via an in-place Walsh-Hadamard
/// butterfly with overflow checks.
Spectrum transform(const CubeFunction& f);

/// Reconstructs f(x) = sum_S coefficient(S) chi_S(x). Throws
/// VerificationError when some value is not an integer.
CubeFunction inverse_transform(const Spectrum& s);

/// (a * b)(S) = sum_T a(S xor T) b(T), naive quadratic evaluation. The result
/// has scale_log2 = a.scale_log2 + b.scale_log2, so convolving two
/// transform() outputs yields 2^{2n} times the convolution of coefficients.
Spectrum convolve(const Spectrum& a, const Spectrum& b);

/// Exact inner product <f,g> = 2^{-n} sum_x f(x) g(x).
Rational inner_product(const CubeFunction& f, const CubeFunction& g);

/// Whether the coefficients satisfy f^ = f^ * f^, the spectral form of f^2 = f.
bool is_idempotent_spectrum(const Spectrum& s);

/// Every quantity the main counting argument computes, evaluated on a
/// concrete verified family f = sum of its box indicators.
struct ProofTrace {
    std::size_t m = 0;
    std::size_t k = 0;
    std::size_t n = 0;
    Rational fhat_empty;
    /// One entry per box, in family order: prop mask and f^(prop B).
    std::vector<std::pair<BitSet, Rational>> fhat_props;
    Rational energy;
    Rational bessel_rhs;
    /// energy - bessel_rhs.
    Rational bessel_slack;
    /// Every f^(prop B) is +-1/2^k.
    bool props_are_unit = false;
    /// Subsets with nonzero coefficient, increasing mask order.
    std::vector<std::size_t> support;
    /// support == {empty} u {prop B}.
    bool support_equals_props = false;
    /// Support contains the empty set and is closed under symmetric
    /// difference; computed only when n <= kMaxConvolutionDimension.
    std::optional<bool> support_is_group;
    /// f^ == f^ * f^; computed only when n <= kMaxConvolutionDimension.
    std::optional<bool> idempotent;
};

/// Throws VerificationError for an unverified family and GuardError for n
/// above kMaxDenseDimension.
ProofTrace proof_trace(const BoxFamily& family);

/// One line per nonzero coefficient: `S <subset> <scaled> <rational>`.
std::string format_spectrum(const Spectrum& s, bool include_zero = false);

}  // namespace nnbox
