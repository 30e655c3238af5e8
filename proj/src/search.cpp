#include "viikit/search.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace viikit {

namespace {

// Serialization of one rotation/reflection of the cycle, branches included,
// used both for symmetry-canonicalization and duplicate detection.
std::string oriented_key(const CurveConfiguration& c, int shift, bool reflect) {
    const int p = c.cycle_size();
    std::vector<std::string> chain_at((size_t)p);
    for (const Branch& b : c.branches) {
        std::string s;
        for (long long v : b.chain) s += std::to_string(v) + ",";
        chain_at[(size_t)b.attach] = s;
    }
    std::string key;
    for (int i = 0; i < p; ++i) {
        int idx = reflect ? (((shift - i) % p + p) % p) : ((shift + i) % p);
        key += std::to_string(c.cycle[(size_t)idx].self) + "n" +
               std::to_string(c.cycle[(size_t)idx].nodes) + "[" + chain_at[(size_t)idx] + "];";
    }
    return key;
}

std::string canonical_key(const CurveConfiguration& c) {
    std::string best;
    for (int shift = 0; shift < c.cycle_size(); ++shift)
        for (bool reflect : {false, true}) {
            std::string key = oriented_key(c, shift, reflect);
            if (best.empty() || key < best) best = std::move(key);
        }
    return best;
}

// Sequence canonical form ignoring branches, to prune equivalent cycle
// arrangements early; branch placements on a canonical cycle still cover
// every configuration up to the final dedup.
bool is_canonical_arrangement(const std::vector<long long>& cycle) {
    const int p = (int)cycle.size();
    auto oriented = [&](int shift, bool reflect) {
        std::vector<long long> v((size_t)p);
        for (int i = 0; i < p; ++i)
            v[(size_t)i] = cycle[(size_t)(reflect ? (((shift - i) % p + p) % p) : ((shift + i) % p))];
        return v;
    };
    std::vector<long long> self = oriented(0, false);
    for (int shift = 0; shift < p; ++shift)
        for (bool reflect : {false, true})
            if (oriented(shift, reflect) < self) return false;
    return true;
}

bool multiset_equal(std::vector<Rational> a, std::vector<Rational> b) {
    if (a.size() != b.size()) return false;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

}  // namespace

std::vector<SearchMatch> search_configurations(const SearchQuery& query) {
    const size_t n = query.self_ints.size();
    if ((int)n > kSearchSizeCap)
        throw SizeCapExceeded("search over " + std::to_string(n) +
                              " curves exceeds the cap of " + std::to_string(kSearchSizeCap));

    std::vector<SearchMatch> matches;
    std::set<std::string> seen;

    auto consider = [&](const CurveConfiguration& config) {
        if (!config.violations().empty()) return;
        if (!seen.insert(canonical_key(config)).second) return;
        IntersectionData data = intersection_matrix(config);
        BigInt det = determinant(data.matrix);
        if (query.det && det != *query.det) return;
        SearchMatch match;
        match.config = config;
        match.det = det;
        if (det != 0) {
            if (auto root = is_perfect_square(det)) match.k = *root + 1;
        }
        try {
            AnticanonicalResult anti = anticanonical(config);
            match.lambda = anti.lambda;
            match.m = anti.m;
        } catch (const SingularMatrix&) {
        }
        if (query.lambda) {
            if (!match.lambda || !multiset_equal(*match.lambda, *query.lambda)) return;
        }
        matches.push_back(std::move(match));
    };

    const std::vector<long long>& elems = query.self_ints;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<long long> cycle_vals, rest;
        for (size_t i = 0; i < n; ++i)
            (mask >> i & 1u ? cycle_vals : rest).push_back(elems[i]);
        std::sort(cycle_vals.begin(), cycle_vals.end());
        std::sort(rest.begin(), rest.end());
        const int p = (int)cycle_vals.size();

        do {
            if (!is_canonical_arrangement(cycle_vals)) continue;
            CurveConfiguration base;
            for (long long self : cycle_vals) base.cycle.push_back({self, p == 1 ? 1 : 0});

            if (rest.empty()) {
                consider(base);
                continue;
            }
            const int r = (int)rest.size();
            // Choose attach positions, then split each distinct ordering of the
            // remaining curves into that many chains.
            for (unsigned pos_mask = 1; pos_mask < (1u << p); ++pos_mask) {
                std::vector<int> positions;
                for (int i = 0; i < p; ++i)
                    if (pos_mask >> i & 1u) positions.push_back(i);
                const int t = (int)positions.size();
                if (t > r) continue;
                std::vector<long long> perm = rest;
                do {
                    // Compositions of r into t positive blocks: choose t-1 cut
                    // points among the r-1 gaps.
                    for (unsigned cuts = 0; cuts < (1u << (r - 1)); ++cuts) {
                        if (__builtin_popcount(cuts) != t - 1) continue;
                        CurveConfiguration config = base;
                        std::vector<long long> chain;
                        int block = 0;
                        for (int i = 0; i < r; ++i) {
                            chain.push_back(perm[(size_t)i]);
                            bool cut = i + 1 == r || (cuts >> i & 1u);
                            if (cut) {
                                config.branches.push_back({positions[(size_t)block], chain});
                                chain.clear();
                                ++block;
                            }
                        }
                        consider(config);
                    }
                } while (std::next_permutation(perm.begin(), perm.end()));
            }
        } while (std::next_permutation(cycle_vals.begin(), cycle_vals.end()));
    }
    return matches;
}

}  // namespace viikit
