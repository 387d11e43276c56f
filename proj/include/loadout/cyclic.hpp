#ifndef LOADOUT_CYCLIC_HPP
#define LOADOUT_CYCLIC_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "loadout/errors.hpp"
#include "loadout/rational.hpp"

// Cyclic-polytope face counting and star/dot array combinatorics.
// Subsets of [n] are 1-indexed, sorted integer vectors throughout.

namespace loadout::cyclic {

using Subset = std::vector<int>;

inline constexpr long kEnumerationCap = 2'000'000;

/// Face counts (f_0 ... f_{m-1}) of the cyclic polytope C(n, m).
struct FVector {
    int n = 0;
    int m = 0;
    std::vector<Integer> entries;  // entries[k-1] = number of (k-1)-faces

    const Integer& faces_of_size(int k) const { return entries.at(k - 1); }
};

/// Number of (k-1)-dimensional faces of C(n, m) from the double-binomial
/// sum, for 1 <= k <= m.
inline Integer face_count(int n, int m, int k) {
    Integer total = 0;
    for (int l = 0; l <= m / 2; ++l)
        total += binomial(l, m - k) * binomial(n - m + l - 1, l);
    for (int l = m / 2 + 1; l <= m; ++l)
        total += binomial(l, m - k) * binomial(n - l - 1, m - l);
    return total;
}

/// Simplified expression for the facet count f_{m-1}(C(n, m)).
inline Integer facet_count_simplified(int n, int m) {
    const int half_up = (m + 1) / 2, half_down = m / 2;
    return binomial(n - half_up, half_down) + binomial(n - half_down - 1, half_up - 1);
}

inline FVector fvector(int n, int m) {
    if (!(n > m && m >= 2)) throw InvalidParams("fvector requires n > m >= 2");
    FVector fv;
    fv.n = n;
    fv.m = m;
    fv.entries.reserve(m);
    for (int k = 1; k <= m; ++k) fv.entries.push_back(face_count(n, m, k));
    // Permanent cross-check against the closed-form facet count.
    if (fv.entries.back() != facet_count_simplified(n, m))
        throw Error("f-vector facet entry disagrees with the simplified formula");
    return fv;
}

struct StarArray {
    int n = 0;
    Subset stars;  // strictly increasing, values in 1..n
};

struct Block {
    std::vector<int> indices;  // consecutive run of stars
    bool odd() const { return indices.size() % 2 == 1; }
};

/// Maximal star runs split into border and inner blocks. A run containing
/// position n is the last border block (this covers the all-of-[n] run,
/// which touches both ends); otherwise a run containing position 1 is the
/// first border block; all remaining runs are inner.
struct BlockDecomposition {
    std::vector<int> first_border;
    std::vector<int> last_border;
    std::vector<Block> inner_blocks;

    int odd_inner_count() const {
        int c = 0;
        for (const auto& b : inner_blocks) c += b.odd() ? 1 : 0;
        return c;
    }
    /// Parity of the last border block; an empty block counts as even.
    bool last_border_odd() const { return last_border.size() % 2 == 1; }
};

inline BlockDecomposition blocks(const StarArray& a) {
    BlockDecomposition out;
    std::vector<int> run;
    auto flush = [&](bool) {
        if (run.empty()) return;
        if (run.back() == a.n)
            out.last_border = run;
        else if (run.front() == 1)
            out.first_border = run;
        else
            out.inner_blocks.push_back(Block{run});
        run.clear();
    };
    for (std::size_t i = 0; i < a.stars.size(); ++i) {
        if (!run.empty() && a.stars[i] != run.back() + 1) flush(false);
        run.push_back(a.stars[i]);
    }
    flush(true);
    return out;
}

inline BlockDecomposition blocks(const Subset& subset, int n) {
    return blocks(StarArray{n, subset});
}

enum class FacetClass { OddFacet, EvenFacet, NotFacet };
enum class Parity { Odd, Even };

/// Gap-parity facet classification: a gap is an index absent from the
/// subset; its parity is the parity of the count of larger subset members.
/// A facet has all gaps of one parity (odd facet: g = 1, even facet: g = 2).
inline FacetClass gap_parity(const Subset& subset, int n) {
    std::vector<bool> in(n + 1, false);
    for (int j : subset) in[j] = true;
    bool seen_odd = false, seen_even = false;
    int larger = static_cast<int>(subset.size());
    for (int i = 1; i <= n; ++i) {
        if (in[i]) {
            --larger;
            continue;
        }
        (larger % 2 == 1 ? seen_odd : seen_even) = true;
        if (seen_odd && seen_even) return FacetClass::NotFacet;
    }
    if (seen_odd) return FacetClass::OddFacet;
    return FacetClass::EvenFacet;  // includes the gapless case n == |subset|
}

/// Shephard's criterion: a k-subset spans a (k-1)-face of C(n, m) iff its
/// array has at most m - k odd inner blocks.
inline bool is_face(const Subset& subset, int n, int m) {
    const int k = static_cast<int>(subset.size());
    if (k < 1 || k > m) throw InvalidParams("is_face requires 1 <= |subset| <= m");
    return blocks(subset, n).odd_inner_count() <= m - k;
}

namespace detail {

inline void for_each_subset(int n, int k, long cap,
                            const std::function<void(const Subset&)>& fn) {
    Integer count = binomial(n, k);
    if (count > cap)
        throw EnumerationTooLarge("binomial(" + std::to_string(n) + "," +
                                  std::to_string(k) + ") exceeds enumeration cap");
    Subset cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i + 1;
    if (k == 0) {
        fn(cur);
        return;
    }
    while (true) {
        fn(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - (k - 1 - i)) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
}

struct ArrayClass {
    int odd_inner = 0;
    bool last_border_odd = false;
};

inline ArrayClass classify(const Subset& subset, int n) {
    BlockDecomposition d = blocks(subset, n);
    return ArrayClass{d.odd_inner_count(), d.last_border_odd()};
}

}  // namespace detail

/// |A(n, k, s)| by direct enumeration of all k-subsets.
inline Integer count_arrays_enum(int n, int k, int s, std::optional<Parity> parity) {
    Integer total = 0;
    detail::for_each_subset(n, k, kEnumerationCap, [&](const Subset& sub) {
        detail::ArrayClass c = detail::classify(sub, n);
        if (c.odd_inner != s) return;
        if (parity && (*parity == Parity::Odd) != c.last_border_odd) return;
        ++total;
    });
    return total;
}

/// |A(n, k, s)| by dynamic programming over (position, stars used, odd inner
/// blocks closed, open-run parity, open-run border status).
inline Integer count_arrays_dp(int n, int k, int s, std::optional<Parity> parity) {
    // open: 0 = no open run, 1 = run started at position 1, 2 = run started later.
    // odd flag applies to the open run only.
    using State = std::tuple<int, int, int, int>;  // stars, odd_inner, open, open_odd
    std::map<State, Integer> dp;
    dp[{0, 0, 0, 0}] = 1;
    for (int pos = 1; pos <= n; ++pos) {
        std::map<State, Integer> next;
        for (const auto& [state, cnt] : dp) {
            auto [stars, odd_inner, open, open_odd] = state;
            // dot: close any open run; a closed run is inner unless it
            // started at position 1.
            {
                int ni = odd_inner + ((open == 2 && open_odd) ? 1 : 0);
                if (ni <= s) next[{stars, ni, 0, 0}] += cnt;
            }
            // star
            if (stars < k) {
                if (open == 0)
                    next[{stars + 1, odd_inner, pos == 1 ? 1 : 2, 1}] += cnt;
                else
                    next[{stars + 1, odd_inner, open, 1 - open_odd}] += cnt;
            }
        }
        dp = std::move(next);
    }
    Integer total = 0;
    for (const auto& [state, cnt] : dp) {
        auto [stars, odd_inner, open, open_odd] = state;
        if (stars != k || odd_inner != s) continue;
        const bool last_odd = (open != 0) && open_odd;  // empty last border is even
        if (parity && (*parity == Parity::Odd) != last_odd) continue;
        total += cnt;
    }
    return total;
}

/// |A(n, k, s)|, optionally restricted by the parity of the last border
/// block. Exhaustive enumeration up to n = 20, DP beyond.
inline Integer count_arrays(int n, int k, int s,
                            std::optional<Parity> parity = std::nullopt) {
    if (!(0 <= s && s <= k && k <= n)) throw InvalidParams("count_arrays range violation");
    if (n <= 20) return count_arrays_enum(n, k, s, parity);
    return count_arrays_dp(n, k, s, parity);
}

/// All k-subsets of [n] spanning (k-1)-faces of C(n, m), lexicographic.
inline std::vector<Subset> enumerate_faces(int n, int m, int k,
                                           long cap = kEnumerationCap) {
    if (!(1 <= k && k <= m && m < n))
        throw InvalidParams("enumerate_faces requires 1 <= k <= m < n");
    std::vector<Subset> out;
    detail::for_each_subset(n, k, cap, [&](const Subset& sub) {
        if (is_face(sub, n, m)) out.push_back(sub);
    });
    return out;
}

/// Facets of C(n, m) filtered by gap parity. Classification is computed
/// twice, by gap parity and by block structure, and must agree.
inline std::vector<Subset> enumerate_facets(int n, int m,
                                            std::optional<Parity> parity = std::nullopt,
                                            long cap = kEnumerationCap) {
    if (n <= m) throw InvalidParams("enumerate_facets requires n > m");
    std::vector<Subset> out;
    detail::for_each_subset(n, m, cap, [&](const Subset& sub) {
        const FacetClass gp = gap_parity(sub, n);
        BlockDecomposition d = blocks(sub, n);
        const bool block_facet = d.odd_inner_count() == 0;
        if (block_facet != (gp != FacetClass::NotFacet) ||
            (block_facet && d.last_border_odd() != (gp == FacetClass::OddFacet)))
            throw Error("gap-parity and block-structure facet classifications disagree");
        if (gp == FacetClass::NotFacet) return;
        if (parity && (*parity == Parity::Odd) != (gp == FacetClass::OddFacet)) return;
        out.push_back(sub);
    });
    return out;
}

}  // namespace loadout::cyclic

#endif
