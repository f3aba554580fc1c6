#include "nnbox/setgroups.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_set>

#include "nnbox/error.hpp"

namespace nnbox {

SetFamily::SetFamily(std::size_t n, std::vector<BitSet> sets) : n_(n) {
    sets_.reserve(sets.size());
    for (auto& s : sets) add(std::move(s));
}

SetFamily SetFamily::from_lists(std::size_t n, const std::vector<std::vector<std::size_t>>& lists) {
    SetFamily f(n);
    for (const auto& list : lists) {
        BitSet s(n);
        for (std::size_t e : list) {
            if (e == 0 || e > n) throw GuardError("element " + std::to_string(e) + " outside [" + std::to_string(n) + "]");
            s.set(e - 1);
        }
        f.add(std::move(s));
    }
    return f;
}

void SetFamily::add(BitSet s) {
    if (s.size() != n_) throw GuardError("set has ground size " + std::to_string(s.size()) + ", expected " + std::to_string(n_));
    if (contains(s)) throw GuardError("duplicate set in family");
    sets_.push_back(std::move(s));
}

bool SetFamily::contains(const BitSet& s) const { return std::find(sets_.begin(), sets_.end(), s) != sets_.end(); }

SetFamily SetFamily::sorted() const {
    std::vector<BitSet> v = sets_;
    std::sort(v.begin(), v.end(), [](const BitSet& a, const BitSet& b) {
        const auto ca = a.count(), cb = b.count();
        if (ca != cb) return ca < cb;
        // Lexicographic on increasing element lists.
        for (std::size_t i = a.find_first(), j = b.find_first();; i = a.find_next(i), j = b.find_next(j)) {
            if (i == a.size() || j == b.size()) return false;
            if (i != j) return i < j;
        }
    });
    SetFamily out(n_);
    out.sets_ = std::move(v);
    return out;
}

std::size_t two_adic_order(std::size_t k) {
    if (k == 0) throw GuardError("2-adic order of 0 is undefined");
    return static_cast<std::size_t>(std::countr_zero(k));
}

GroupReport check_group(const SetFamily& family) {
    GroupReport r;
    const auto& sets = family.sets();
    r.size = sets.size();

    std::unordered_set<BitSet, BitSetHash> members(sets.begin(), sets.end());
    r.contains_empty = members.contains(BitSet(family.ground_size()));

    r.closed = true;
    for (std::size_t i = 0; i < sets.size() && r.closed; ++i) {
        for (std::size_t j = 0; j < sets.size(); ++j) {
            if (!members.contains(sets[i] ^ sets[j])) {
                r.closed = false;
                r.closure_witness = std::make_pair(i, j);
                break;
            }
        }
    }
    r.is_group = r.contains_empty && r.closed;

    std::vector<const BitSet*> nonempty;
    for (const auto& s : sets)
        if (s.any()) nonempty.push_back(&s);
    if (!nonempty.empty()) {
        const std::size_t k = nonempty.front()->count();
        const bool uniform = std::all_of(nonempty.begin(), nonempty.end(), [k](const BitSet* s) { return s->count() == k; });
        if (uniform) r.uniform_k = k;
    }

    // Half-intersections only make sense against a common cardinality.
    if (r.uniform_k) {
        const std::size_t k = *r.uniform_k;
        for (std::size_t i = 0; i < nonempty.size() && r.half_intersections_ok; ++i)
            for (std::size_t j = i + 1; j < nonempty.size(); ++j)
                if (2 * nonempty[i]->intersection_count(*nonempty[j]) != k) {
                    r.half_intersections_ok = false;
                    break;
                }
        r.v = two_adic_order(k);
        r.bound = std::size_t{2} << r.v;
        r.bound_ok = r.size <= r.bound;
    } else {
        r.half_intersections_ok = nonempty.size() < 2;
    }
    return r;
}

SetFamily generate_group(std::size_t v) {
    if (v > kMaxGroupOrder) throw GuardError("v=" + std::to_string(v) + " exceeds limit " + std::to_string(kMaxGroupOrder));

    // Stage 0 on ground set [1].
    std::vector<BitSet> current;
    current.emplace_back(1);
    current.emplace_back(1);
    current.back().set(0);
    std::size_t m = 1;

    for (std::size_t stage = 0; stage < v; ++stage) {
        const std::size_t next_n = 2 * m + 1;
        BitSet unite(m);
        for (const auto& a : current) unite |= a;
        if (unite.count() != m || unite.find_last() != m - 1)
            throw std::logic_error("union of G_v is not the interval [m_v]");

        BitSet K(next_n);
        for (std::size_t e = unite.find_first(); e < m; e = unite.find_next(e)) K.set(e + m);
        K.set(2 * m);

        std::vector<BitSet> sharp, flipped;
        for (const auto& a : current) {
            if (a.none()) continue;
            BitSet s(next_n);
            for (std::size_t e = a.find_first(); e < m; e = a.find_next(e)) {
                s.set(e);
                s.set(e + m);
            }
            flipped.push_back(K ^ s);
            sharp.push_back(std::move(s));
        }
        std::vector<BitSet> next;
        next.reserve(2 * sharp.size() + 2);
        next.emplace_back(next_n);
        next.insert(next.end(), sharp.begin(), sharp.end());
        next.insert(next.end(), flipped.begin(), flipped.end());
        next.push_back(std::move(K));
        current = std::move(next);
        m = next_n;
    }
    return SetFamily(m, std::move(current)).sorted();
}

SetFamily preimage_group(std::size_t v, std::size_t p) {
    if (p == 0 || p % 2 == 0) throw GuardError("p must be odd and positive");
    if (v > kMaxGroupOrder) throw GuardError("v=" + std::to_string(v) + " exceeds limit " + std::to_string(kMaxGroupOrder));
    const SetFamily base = generate_group(v);
    const std::size_t m = base.ground_size();
    if (p > kMaxGroundSet / m) throw GuardError("ground set p*(2^{v+1}-1) exceeds limit");
    const std::size_t n = p * m;

    SetFamily out(n);
    for (const auto& a : base.sets()) {
        BitSet s(n);
        // f^{-1}(e) = {(e-1)p + 1, ..., e p} in 1-based terms.
        for (std::size_t e = a.find_first(); e < m; e = a.find_next(e))
            for (std::size_t j = 0; j < p; ++j) s.set(e * p + j);
        out.add(std::move(s));
    }
    return out;
}

std::string serialize_sets(const SetFamily& family) {
    std::string out = "# n=" + std::to_string(family.ground_size()) + "\n";
    for (const auto& s : family.sets()) {
        if (s.none()) {
            out += "{}\n";
            continue;
        }
        bool first = true;
        for (std::size_t e = s.find_first(); e < s.size(); e = s.find_next(e)) {
            if (!first) out += ',';
            out += std::to_string(e + 1);
            first = false;
        }
        out += '\n';
    }
    return out;
}

SetFamily parse_sets(std::string_view text) {
    std::optional<std::size_t> header_n;
    std::vector<std::vector<std::size_t>> lists;
    std::size_t max_element = 0;
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
            if (auto at = comment.find("n="); at != std::string_view::npos) {
                std::size_t value = 0;
                auto digits = comment.substr(at + 2);
                auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
                if (ec == std::errc() && ptr != digits.data()) header_n = value;
            }
            line = line.substr(0, hash);
        }
        std::string compact;
        for (char c : line)
            if (c != ' ' && c != '\t') compact += c;
        if (compact.empty()) continue;
        if (compact == "{}") {
            lists.emplace_back();
            continue;
        }
        std::vector<std::size_t> elems;
        std::string_view rest = compact;
        while (true) {
            auto comma = rest.find(',');
            std::string_view tok = rest.substr(0, comma);
            std::size_t e = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), e);
            if (ec != std::errc() || ptr != tok.data() + tok.size() || e == 0)
                throw FormatError("expected a positive integer, got '" + std::string(tok) + "'", line_no);
            if (!elems.empty() && e <= elems.back()) throw FormatError("elements must be strictly increasing", line_no);
            elems.push_back(e);
            max_element = std::max(max_element, e);
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        lists.push_back(std::move(elems));
    }
    if (lists.empty() && !header_n) throw FormatError("empty set family without an n=<int> header");
    const std::size_t n = header_n.value_or(max_element);
    if (max_element > n) throw FormatError("element " + std::to_string(max_element) + " exceeds header n=" + std::to_string(n));
    try {
        return SetFamily::from_lists(n, lists);
    } catch (const GuardError& e) {
        throw FormatError(e.what());
    }
}

}  // namespace nnbox
