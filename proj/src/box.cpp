#include "nnbox/box.hpp"

#include <charconv>
#include <optional>

#include "nnbox/error.hpp"

namespace nnbox {

Box::Box(std::size_t n) : fixed_(n), values_(n) {
    if (n == 0) throw GuardError("box dimension must be at least 1");
}

Box::Box(BitSet fixed, BitSet values) : fixed_(std::move(fixed)), values_(std::move(values)) {
    if (fixed_.size() == 0) throw GuardError("box dimension must be at least 1");
    if (fixed_.size() != values_.size()) throw GuardError("fixed and value masks differ in length");
    values_ &= fixed_;
}

Box Box::from_word(std::string_view word) {
    if (word.empty()) throw FormatError("empty box word");
    BitSet fixed(word.size());
    BitSet values(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) {
        switch (word[i]) {
            case '*': break;
            case '0': fixed.set(i); break;
            case '1':
                fixed.set(i);
                values.set(i);
                break;
            default: throw FormatError(std::string("illegal character '") + word[i] + "' in box word");
        }
    }
    return Box(std::move(fixed), std::move(values));
}

std::vector<std::size_t> Box::prop_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = fixed_.find_first(); i < fixed_.size(); i = fixed_.find_next(i)) out.push_back(i + 1);
    return out;
}

bool Box::contains(const BitSet& point) const {
    if (point.size() != dimension()) throw GuardError("point dimension does not match box");
    const auto& f = fixed_.words();
    const auto& v = values_.words();
    const auto& p = point.words();
    for (std::size_t w = 0; w < f.size(); ++w)
        if (f[w] & (v[w] ^ p[w])) return false;
    return true;
}

std::string Box::to_word() const {
    std::string s(dimension(), '*');
    for (std::size_t i = 0; i < s.size(); ++i)
        if (fixed_.test(i)) s[i] = values_.test(i) ? '1' : '0';
    return s;
}

std::string format_subset(const BitSet& s) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = s.find_first(); i < s.size(); i = s.find_next(i)) {
        if (!first) out += ',';
        out += std::to_string(i + 1);
        first = false;
    }
    return out + "}";
}

bool is_disjoint(const Box& a, const Box& b) {
    if (a.dimension() != b.dimension()) throw GuardError("boxes have different ambient dimensions");
    const auto& fa = a.fixed().words();
    const auto& fb = b.fixed().words();
    const auto& va = a.values().words();
    const auto& vb = b.values().words();
    for (std::size_t w = 0; w < fa.size(); ++w)
        if (fa[w] & fb[w] & (va[w] ^ vb[w])) return true;
    return false;
}

BoxFamily make_family(std::size_t n, const std::vector<std::string>& words) {
    BoxFamily f;
    f.n = n;
    for (const auto& w : words) {
        Box b = Box::from_word(w);
        if (b.dimension() != n) throw FormatError("word '" + w + "' does not have length " + std::to_string(n));
        f.boxes.push_back(std::move(b));
    }
    f.k = f.boxes.empty() ? 0 : f.boxes.front().prop_size();
    return f;
}

namespace {

std::optional<std::size_t> header_value(std::string_view comment, std::string_view key) {
    std::size_t pos = 0;
    while (pos < comment.size()) {
        while (pos < comment.size() && (comment[pos] == ' ' || comment[pos] == '\t')) ++pos;
        std::size_t end = pos;
        while (end < comment.size() && comment[end] != ' ' && comment[end] != '\t') ++end;
        std::string_view tok = comment.substr(pos, end - pos);
        if (tok.size() > key.size() + 1 && tok.substr(0, key.size()) == key && tok[key.size()] == '=') {
            std::size_t value = 0;
            auto digits = tok.substr(key.size() + 1);
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
            if (ec != std::errc() || ptr != digits.data() + digits.size()) return std::nullopt;
            return value;
        }
        pos = end;
    }
    return std::nullopt;
}

}  // namespace

BoxFamily parse_family(std::string_view text) {
    BoxFamily f;
    std::optional<std::size_t> header_n;
    std::optional<std::size_t> header_k;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            std::string_view comment = line.substr(hash + 1);
            if (auto n = header_value(comment, "n")) header_n = n;
            if (auto k = header_value(comment, "k")) header_k = k;
            line = line.substr(0, hash);
        }
        std::string word;
        for (char c : line)
            if (c != ' ' && c != '\t') word += c;
        if (word.empty()) continue;

        Box b = [&] {
            try {
                return Box::from_word(word);
            } catch (const FormatError& e) {
                throw FormatError(e.what(), line_no);
            }
        }();
        if (!f.boxes.empty() && b.dimension() != f.n) {
            throw FormatError("word length " + std::to_string(b.dimension()) + " differs from " + std::to_string(f.n),
                              line_no);
        }
        if (f.boxes.empty()) f.n = b.dimension();
        f.boxes.push_back(std::move(b));
    }

    if (f.boxes.empty()) {
        if (!header_n || *header_n == 0) throw FormatError("empty box family without an n=<int> header");
        f.n = *header_n;
        f.k = header_k.value_or(0);
        return f;
    }
    if (header_n && *header_n != f.n) throw FormatError("header n=" + std::to_string(*header_n) + " disagrees with word length");
    f.k = f.boxes.front().prop_size();
    return f;
}

std::string serialize_family(const BoxFamily& family) {
    if (family.boxes.empty()) return "# n=" + std::to_string(family.n) + " k=" + std::to_string(family.k) + "\n";
    std::string out;
    out.reserve(family.boxes.size() * (family.n + 1));
    for (const auto& b : family.boxes) {
        out += b.to_word();
        out += '\n';
    }
    return out;
}

const char* condition_name(Condition c) {
    switch (c) {
        case Condition::Alpha: return "alpha";
        case Condition::Beta: return "beta";
        case Condition::Gamma: return "gamma";
    }
    return "?";
}

bool bound_applies(std::size_t k, std::size_t n) { return 3 <= k && k < n; }

std::size_t box_bound(std::size_t k) {
    if (k >= 63) return static_cast<std::size_t>(-1);
    return (std::size_t{1} << k) - 2;
}

VerifyReport verify_family(const BoxFamily& family) {
    VerifyReport r;
    const auto& boxes = family.boxes;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        if (boxes[i].dimension() != family.n) throw GuardError("box " + std::to_string(i) + " has the wrong dimension");
        if (boxes[i].prop_size() != family.k) {
            r.alpha_ok = false;
            r.violations.push_back({Condition::Alpha, {i}});
        }
    }
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        for (std::size_t j = i + 1; j < boxes.size(); ++j) {
            if (boxes[i].prop() == boxes[j].prop()) {
                r.beta_ok = false;
                r.violations.push_back({Condition::Beta, {i, j}});
            }
            if (!is_disjoint(boxes[i], boxes[j])) {
                r.gamma_ok = false;
                r.violations.push_back({Condition::Gamma, {i, j}});
            }
        }
    }
    r.bound_applies = bound_applies(family.k, family.n);
    if (r.conditions_ok() && r.bound_applies) r.bound_ok = boxes.size() <= box_bound(family.k);
    return r;
}

BoxFamily double_family(const BoxFamily& family) {
    const VerifyReport report = verify_family(family);
    if (!report.conditions_ok()) throw VerificationError("cannot double a family that fails verification");

    const std::size_t n = family.n;
    BoxFamily out;
    out.n = 2 * n + 1;
    out.k = family.k + 1;
    out.boxes.reserve(2 * family.size());
    for (const auto& b : family.boxes) {
        BitSet fixed(out.n), values(out.n);
        for (std::size_t i = 0; i < n; ++i) {
            if (b.is_fixed(i)) {
                fixed.set(i);
                values.set(i, b.value(i));
            }
        }
        fixed.set(n);
        out.boxes.emplace_back(std::move(fixed), std::move(values));
    }
    for (const auto& b : family.boxes) {
        BitSet fixed(out.n), values(out.n);
        fixed.set(n);
        values.set(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (b.is_fixed(i)) {
                fixed.set(n + 1 + i);
                values.set(n + 1 + i, b.value(i));
            }
        }
        out.boxes.emplace_back(std::move(fixed), std::move(values));
    }
    return out;
}

}  // namespace nnbox
