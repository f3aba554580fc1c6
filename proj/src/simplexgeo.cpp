#include "nnbox/simplexgeo.hpp"

#include <algorithm>
#include <charconv>

#include "nnbox/error.hpp"

namespace nnbox {
namespace {

using Matrix = std::vector<std::vector<Rational>>;

Rational determinant(Matrix a) {
    const std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            const Rational factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
        }
    }
    return det;
}

BigInt gcd(BigInt a, BigInt b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        BigInt t = a % b;
        a = std::move(b);
        b = std::move(t);
    }
    return a;
}

// Hyperplane through d points of Q^d: expand det [[x, 1], [p_i, 1]] along the
// first row.
Hyperplane through(const std::vector<const RationalPoint*>& pts) {
    const std::size_t d = pts.size();
    std::vector<Rational> cof(d + 1);
    for (std::size_t j = 0; j <= d; ++j) {
        Matrix minor(d, std::vector<Rational>(d));
        for (std::size_t r = 0; r < d; ++r) {
            std::size_t c2 = 0;
            for (std::size_t c = 0; c <= d; ++c) {
                if (c == j) continue;
                minor[r][c2++] = c < d ? (*pts[r])[c] : Rational(1);
            }
        }
        cof[j] = determinant(std::move(minor));
        if ((j % 2) == 1) cof[j] = -cof[j];
    }
    // sum_j cof[j] x_j + cof[d] = 0
    std::vector<Rational> normal(cof.begin(), cof.begin() + static_cast<std::ptrdiff_t>(d));
    return Hyperplane::canonical(normal, -cof[d]);
}

}  // namespace

Simplex::Simplex(std::vector<RationalPoint> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 2) throw GuardError("a simplex needs at least two vertices");
    const std::size_t d = vertices_.size() - 1;
    if (d > kMaxSimplexDimension) throw GuardError("simplex dimension exceeds " + std::to_string(kMaxSimplexDimension));
    for (const auto& v : vertices_)
        if (v.size() != d) throw GuardError("a d-simplex needs d+1 points with d coordinates each");
    Matrix edges(d, std::vector<Rational>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t c = 0; c < d; ++c) edges[i][c] = vertices_[i + 1][c] - vertices_[0][c];
    if (determinant(std::move(edges)) == 0) throw GuardError("degenerate simplex: vertices are affinely dependent");
}

Hyperplane Hyperplane::canonical(const std::vector<Rational>& normal, const Rational& offset) {
    if (std::all_of(normal.begin(), normal.end(), [](const Rational& r) { return r == 0; }))
        throw GuardError("hyperplane normal is zero");
    BigInt lcm = 1;
    auto absorb = [&lcm](const Rational& r) {
        const BigInt den = boost::multiprecision::denominator(r);
        lcm = lcm / gcd(lcm, den) * den;
    };
    for (const auto& r : normal) absorb(r);
    absorb(offset);

    Hyperplane h;
    BigInt content = 0;
    for (const auto& r : normal) {
        h.normal.push_back(boost::multiprecision::numerator(r) * (lcm / boost::multiprecision::denominator(r)));
        content = gcd(content, h.normal.back());
    }
    h.offset = boost::multiprecision::numerator(offset) * (lcm / boost::multiprecision::denominator(offset));
    content = gcd(content, h.offset);

    const auto first = std::find_if(h.normal.begin(), h.normal.end(), [](const BigInt& a) { return a != 0; });
    if (*first < 0) content = -content;
    for (auto& a : h.normal) a /= content;
    h.offset /= content;
    return h;
}

int Hyperplane::side(const RationalPoint& x) const {
    if (x.size() != normal.size()) throw GuardError("point and hyperplane dimensions differ");
    Rational value = -Rational(offset);
    for (std::size_t i = 0; i < normal.size(); ++i) value += Rational(normal[i]) * x[i];
    return value > 0 ? 1 : (value < 0 ? -1 : 0);
}

std::string Hyperplane::to_row() const {
    std::string out;
    for (const auto& a : normal) out += a.str() + " ";
    return out + offset.str();
}

std::vector<Hyperplane> facet_hyperplanes(const Simplex& s) {
    const auto& vs = s.vertices();
    std::vector<Hyperplane> out;
    out.reserve(vs.size());
    for (std::size_t omit = 0; omit < vs.size(); ++omit) {
        std::vector<const RationalPoint*> pts;
        for (std::size_t i = 0; i < vs.size(); ++i)
            if (i != omit) pts.push_back(&vs[i]);
        out.push_back(through(pts));
    }
    return out;
}

namespace {

struct FacetSides {
    std::vector<Hyperplane> planes;
    /// Side (+1/-1) of the simplex relative to each plane.
    std::vector<int> sides;
};

FacetSides facet_sides(const Simplex& s) {
    FacetSides fs;
    fs.planes = facet_hyperplanes(s);
    for (std::size_t i = 0; i < fs.planes.size(); ++i) {
        const int side = fs.planes[i].side(s.vertices()[i]);
        for (const auto& v : s.vertices()) {
            const int sv = fs.planes[i].side(v);
            if (sv != 0 && sv != side) throw VerificationError("simplex has vertices on both sides of its own facet plane");
        }
        fs.sides.push_back(side);
    }
    return fs;
}

void require_same_dimension(const std::vector<Simplex>& family) {
    for (const auto& s : family)
        if (s.dimension() != family.front().dimension()) throw GuardError("simplices of different dimensions");
}

std::optional<Hyperplane> separating_facet(const FacetSides& a, const FacetSides& b) {
    std::optional<Hyperplane> best;
    for (std::size_t i = 0; i < a.planes.size(); ++i) {
        for (std::size_t j = 0; j < b.planes.size(); ++j) {
            if (a.planes[i] == b.planes[j] && a.sides[i] != b.sides[j]) {
                if (!best || a.planes[i] < *best) best = a.planes[i];
            }
        }
    }
    return best;
}

}  // namespace

NeighbourlyReport check_nearly_neighbourly(const std::vector<Simplex>& family) {
    NeighbourlyReport report;
    if (family.empty()) return report;
    require_same_dimension(family);
    std::vector<FacetSides> sides;
    for (const auto& s : family) sides.push_back(facet_sides(s));
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            PairSeparation p{i, j, separating_facet(sides[i], sides[j])};
            if (!p.witness) report.nearly_neighbourly = false;
            report.pairs.push_back(std::move(p));
        }
    }
    return report;
}

EncodingResult encode_boxes(const std::vector<Simplex>& family) {
    EncodingResult result;
    if (family.empty()) throw GuardError("cannot encode an empty simplex family");
    require_same_dimension(family);

    const NeighbourlyReport report = check_nearly_neighbourly(family);
    if (!report.nearly_neighbourly) {
        for (const auto& p : report.pairs)
            if (!p.witness)
                throw VerificationError("simplices " + std::to_string(p.first + 1) + " and " + std::to_string(p.second + 1) +
                                        " share no separating facet hyperplane");
    }

    std::vector<FacetSides> sides;
    for (const auto& s : family) sides.push_back(facet_sides(s));
    for (const auto& fs : sides) result.hyperplanes.insert(result.hyperplanes.end(), fs.planes.begin(), fs.planes.end());
    std::sort(result.hyperplanes.begin(), result.hyperplanes.end());
    result.hyperplanes.erase(std::unique(result.hyperplanes.begin(), result.hyperplanes.end()), result.hyperplanes.end());

    auto index_of = [&](const Hyperplane& h) {
        return static_cast<std::size_t>(std::lower_bound(result.hyperplanes.begin(), result.hyperplanes.end(), h) -
                                        result.hyperplanes.begin());
    };

    const std::size_t n = result.hyperplanes.size();
    result.family.n = n;
    result.family.k = family.front().dimension() + 1;
    for (const auto& fs : sides) {
        BitSet fixed(n), values(n);
        for (std::size_t i = 0; i < fs.planes.size(); ++i) {
            const std::size_t coord = index_of(fs.planes[i]);
            fixed.set(coord);
            values.set(coord, fs.sides[i] > 0);
        }
        result.family.boxes.emplace_back(std::move(fixed), std::move(values));
    }
    for (const auto& p : report.pairs) result.pair_witnesses.push_back({p.first, p.second, index_of(*p.witness)});

    const VerifyReport verified = verify_family(result.family);
    if (!verified.conditions_ok()) throw VerificationError("encoded box family fails the alpha/beta/gamma conditions");
    return result;
}

namespace {

Rational parse_rational(std::string_view tok, std::size_t line_no) {
    auto parse_int = [&](std::string_view s) {
        std::string_view digits = s;
        bool negative = false;
        if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
            negative = digits[0] == '-';
            digits.remove_prefix(1);
        }
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw FormatError("malformed number '" + std::string(tok) + "'", line_no);
        BigInt v{std::string(digits)};
        return negative ? BigInt(-v) : v;
    };
    const auto slash = tok.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(tok));
    const BigInt den = parse_int(tok.substr(slash + 1));
    if (den == 0) throw FormatError("zero denominator in '" + std::string(tok) + "'", line_no);
    return Rational(parse_int(tok.substr(0, slash)), den);
}

}  // namespace

std::vector<Simplex> parse_simplices(std::string_view text) {
    std::optional<std::size_t> d;
    std::vector<Simplex> out;
    std::vector<RationalPoint> block;
    std::size_t block_line = 0;
    std::size_t line_no = 0;

    auto flush = [&] {
        if (block.empty()) return;
        if (block.size() != *d + 1)
            throw FormatError("simplex block has " + std::to_string(block.size()) + " points, expected " + std::to_string(*d + 1),
                              block_line);
        try {
            out.emplace_back(std::move(block));
        } catch (const GuardError& e) {
            throw FormatError(e.what(), block_line);
        }
        block.clear();
    };

    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        bool had_comment = false;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            had_comment = true;
            std::string_view comment = line.substr(hash + 1);
            if (auto at = comment.find("d="); at != std::string_view::npos) {
                std::size_t value = 0;
                auto digits = comment.substr(at + 2);
                auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
                if (ec != std::errc() || value == 0) throw FormatError("malformed d header", line_no);
                if (!out.empty() || !block.empty()) throw FormatError("d header must precede the simplices", line_no);
                d = value;
            }
            line = line.substr(0, hash);
        }

        std::vector<std::string_view> tokens;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
            if (j > i) tokens.push_back(line.substr(i, j - i));
            i = j;
        }
        if (tokens.empty()) {
            // Blank lines end a block; comment-only lines do not.
            if (!had_comment) flush();
            continue;
        }
        if (!d) d = tokens.size();
        if (tokens.size() != *d)
            throw FormatError("expected " + std::to_string(*d) + " coordinates, got " + std::to_string(tokens.size()), line_no);
        if (block.size() == *d + 1) throw FormatError("simplex block has more than d+1 points", line_no);
        RationalPoint p;
        for (auto tok : tokens) p.push_back(parse_rational(tok, line_no));
        if (block.empty()) block_line = line_no;
        block.push_back(std::move(p));
    }
    flush();
    return out;
}

std::string format_hyperplanes(const std::vector<Hyperplane>& hyperplanes) {
    std::string out = "# hyperplanes: a_1 ... a_d c (a . x = c), one per box coordinate\n";
    for (const auto& h : hyperplanes) out += h.to_row() + "\n";
    return out;
}

}  // namespace nnbox
