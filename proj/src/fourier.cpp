#include "nnbox/fourier.hpp"

#include <algorithm>
#include <bit>

#include "nnbox/error.hpp"

namespace nnbox {
namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("64-bit overflow in spectrum arithmetic");
    return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("64-bit overflow in spectrum arithmetic");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("64-bit overflow in spectrum arithmetic");
    return r;
}

void require_dense(std::size_t n) {
    if (n > kMaxDenseDimension)
        throw GuardError("dimension " + std::to_string(n) + " exceeds dense limit " + std::to_string(kMaxDenseDimension));
}

// Unnormalized butterfly: out[S] = sum_x in[x] (-1)^{popcount(S & x)}.
void walsh_hadamard(std::vector<std::int64_t>& a) {
    for (std::size_t len = 1; len < a.size(); len <<= 1) {
        for (std::size_t i = 0; i < a.size(); i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                const std::int64_t u = a[j];
                const std::int64_t v = a[j + len];
                a[j] = checked_add(u, v);
                a[j + len] = checked_sub(u, v);
            }
        }
    }
}

std::uint64_t low_mask(const BitSet& b) { return b.words().empty() ? 0 : b.words()[0]; }

std::string format_mask(std::size_t mask) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; mask >> i; ++i) {
        if (!((mask >> i) & 1U)) continue;
        if (!first) out += ',';
        out += std::to_string(i + 1);
        first = false;
    }
    return out + "}";
}

}  // namespace

CubeFunction::CubeFunction(std::size_t dim) : n(dim) {
    require_dense(dim);
    values.assign(std::size_t{1} << dim, 0);
}

CubeFunction::CubeFunction(std::size_t dim, std::vector<std::int64_t> vals) : n(dim), values(std::move(vals)) {
    require_dense(dim);
    if (values.size() != (std::size_t{1} << dim)) throw GuardError("cube function needs exactly 2^n values");
}

bool CubeFunction::is_indicator() const {
    return std::all_of(values.begin(), values.end(), [](std::int64_t v) { return v == 0 || v == 1; });
}

CubeFunction pointwise_product(const CubeFunction& a, const CubeFunction& b) {
    if (a.n != b.n) throw GuardError("pointwise product of functions on different cubes");
    CubeFunction out(a.n);
    for (std::size_t x = 0; x < a.values.size(); ++x) out.values[x] = checked_mul(a.values[x], b.values[x]);
    return out;
}

std::vector<std::size_t> Spectrum::support() const {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < scaled.size(); ++s)
        if (scaled[s] != 0) out.push_back(s);
    return out;
}

bool same_coefficients(const Spectrum& a, const Spectrum& b) {
    if (a.n != b.n || a.scaled.size() != b.scaled.size()) return false;
    for (std::size_t s = 0; s < a.scaled.size(); ++s) {
        // a/2^p == b/2^q  <=>  a*2^q == b*2^p
        const __int128 lhs = static_cast<__int128>(a.scaled[s]) << b.scale_log2;
        const __int128 rhs = static_cast<__int128>(b.scaled[s]) << a.scale_log2;
        if (lhs != rhs) return false;
    }
    return true;
}

CubeFunction indicator_sum(const BoxFamily& family) {
    CubeFunction f(family.n);
    for (const auto& box : family.boxes) {
        if (box.dimension() != family.n) throw GuardError("box dimension differs from family dimension");
        const std::uint64_t fixed = low_mask(box.fixed());
        const std::uint64_t value = low_mask(box.values());
        const std::uint64_t free = ~fixed & ((std::uint64_t{1} << family.n) - 1);
        // Walk every submask of the free coordinates.
        std::uint64_t sub = 0;
        do {
            ++f.values[value | sub];
            sub = (sub - free) & free;
        } while (sub != 0);
    }
    return f;
}

Spectrum transform(const CubeFunction& f) {
    Spectrum s{f.n, static_cast<unsigned>(f.n), f.values};
    walsh_hadamard(s.scaled);
    return s;
}

CubeFunction inverse_transform(const Spectrum& s) {
    require_dense(s.n);
    std::vector<std::int64_t> v = s.scaled;
    walsh_hadamard(v);
    const std::int64_t denom = std::int64_t{1} << s.scale_log2;
    for (std::size_t x = 0; x < v.size(); ++x) {
        if (v[x] % denom != 0)
            throw VerificationError("spectrum does not reconstruct an integer function (point " + std::to_string(x) + ")");
        v[x] /= denom;
    }
    return CubeFunction(s.n, std::move(v));
}

Spectrum convolve(const Spectrum& a, const Spectrum& b) {
    if (a.n != b.n) throw GuardError("convolution of spectra on different cubes");
    if (a.n > kMaxConvolutionDimension)
        throw GuardError("dimension " + std::to_string(a.n) + " exceeds convolution limit " +
                         std::to_string(kMaxConvolutionDimension));
    const std::size_t size = a.scaled.size();
    Spectrum out{a.n, a.scale_log2 + b.scale_log2, std::vector<std::int64_t>(size, 0)};
    for (std::size_t t = 0; t < size; ++t) {
        const std::int64_t bt = b.scaled[t];
        if (bt == 0) continue;
        for (std::size_t s = 0; s < size; ++s) {
            const std::int64_t as = a.scaled[s ^ t];
            if (as != 0) out.scaled[s] = checked_add(out.scaled[s], checked_mul(as, bt));
        }
    }
    return out;
}

Rational inner_product(const CubeFunction& f, const CubeFunction& g) {
    if (f.n != g.n) throw GuardError("inner product of functions on different cubes");
    BigInt sum = 0;
    for (std::size_t x = 0; x < f.values.size(); ++x) sum += BigInt(f.values[x]) * g.values[x];
    return Rational(sum, BigInt(1) << f.n);
}

bool is_idempotent_spectrum(const Spectrum& s) { return same_coefficients(s, convolve(s, s)); }

ProofTrace proof_trace(const BoxFamily& family) {
    require_dense(family.n);
    if (!verify_family(family).conditions_ok()) throw VerificationError("proof trace requires a verified family");

    ProofTrace t;
    t.m = family.size();
    t.k = family.k;
    t.n = family.n;

    const CubeFunction f = indicator_sum(family);
    const Spectrum s = transform(f);

    t.fhat_empty = s.coefficient(0);
    t.energy = inner_product(f, f);
    const Rational unit(BigInt(1), BigInt(1) << family.k);
    t.props_are_unit = true;
    t.bessel_rhs = t.fhat_empty * t.fhat_empty;
    for (const auto& box : family.boxes) {
        Rational c = s.coefficient(low_mask(box.prop()));
        t.props_are_unit = t.props_are_unit && (c == unit || c == -unit);
        t.bessel_rhs += c * c;
        t.fhat_props.emplace_back(box.prop(), std::move(c));
    }
    t.bessel_slack = t.energy - t.bessel_rhs;

    t.support = s.support();
    std::vector<std::size_t> expected{0};
    for (const auto& box : family.boxes) expected.push_back(low_mask(box.prop()));
    std::sort(expected.begin(), expected.end());
    expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
    t.support_equals_props = expected == t.support;

    if (family.n <= kMaxConvolutionDimension) {
        std::vector<char> in_support(s.scaled.size(), 0);
        for (std::size_t m : t.support) in_support[m] = 1;
        bool group = in_support[0] != 0;
        for (std::size_t i = 0; group && i < t.support.size(); ++i)
            for (std::size_t j = i + 1; group && j < t.support.size(); ++j)
                group = in_support[t.support[i] ^ t.support[j]] != 0;
        t.support_is_group = group;
        t.idempotent = is_idempotent_spectrum(s);
    }
    return t;
}

std::string format_spectrum(const Spectrum& s, bool include_zero) {
    std::string out;
    for (std::size_t m = 0; m < s.scaled.size(); ++m) {
        if (s.scaled[m] == 0 && !include_zero) continue;
        out += "S ";
        out += format_mask(m);
        out += ' ';
        out += std::to_string(s.scaled[m]);
        out += ' ';
        out += to_string(s.coefficient(m));
        out += '\n';
    }
    return out;
}

}  // namespace nnbox
