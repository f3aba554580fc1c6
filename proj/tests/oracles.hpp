#pragma once

// Brute-force reference implementations. These deliberately avoid the
// library's fast paths (bit-mask disjointness, Walsh-Hadamard butterfly,
// branch and bound) so they can check them.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "nnbox/box.hpp"
#include "nnbox/fourier.hpp"

namespace oracle {

/// Point-set intersection of two boxes by enumerating {0,1}^n.
inline bool boxes_intersect(const nnbox::Box& a, const nnbox::Box& b) {
    const std::size_t n = a.dimension();
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        nnbox::BitSet p(n);
        for (std::size_t i = 0; i < n; ++i) p.set(i, (x >> i) & 1U);
        if (a.contains(p) && b.contains(p)) return true;
    }
    return false;
}

/// Every word over {0,1,*}^n, as strings.
inline std::vector<std::string> all_words(std::size_t n) {
    std::vector<std::string> out{""};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::string> next;
        for (const auto& w : out)
            for (char c : {'0', '1', '*'}) next.push_back(w + c);
        out = std::move(next);
    }
    return out;
}

inline std::vector<nnbox::Box> words_with_prop(std::size_t k, std::size_t n) {
    std::vector<nnbox::Box> out;
    for (const auto& w : all_words(n))
        if (static_cast<std::size_t>(std::count_if(w.begin(), w.end(), [](char c) { return c != '*'; })) == k)
            out.push_back(nnbox::Box::from_word(w));
    return out;
}

/// Largest family satisfying alpha/beta/gamma, by plain enumeration of all
/// compatible subsets with no bounding and no symmetry reduction.
inline std::size_t naive_max_family(std::size_t k, std::size_t n) {
    const auto boxes = words_with_prop(k, n);
    const std::size_t size = boxes.size();
    std::vector<std::vector<char>> ok(size, std::vector<char>(size, 0));
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j)
            ok[i][j] = i != j && boxes[i].prop() != boxes[j].prop() && !boxes_intersect(boxes[i], boxes[j]);

    std::size_t best = 0;
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t)> grow = [&](std::size_t from) {
        best = std::max(best, chosen.size());
        for (std::size_t v = from; v < size; ++v) {
            bool fits = true;
            for (std::size_t c : chosen) fits = fits && ok[c][v];
            if (!fits) continue;
            chosen.push_back(v);
            grow(v + 1);
            chosen.pop_back();
        }
    };
    grow(0);
    return best;
}

/// 2^n f^(S) = sum_x f(x) (-1)^{|S & x|}, O(4^n).
inline std::vector<std::int64_t> direct_transform(const nnbox::CubeFunction& f) {
    std::vector<std::int64_t> out(f.values.size(), 0);
    for (std::size_t s = 0; s < out.size(); ++s)
        for (std::size_t x = 0; x < out.size(); ++x)
            out[s] += (std::popcount(s & x) % 2 ? -1 : 1) * f.values[x];
    return out;
}

}  // namespace oracle
