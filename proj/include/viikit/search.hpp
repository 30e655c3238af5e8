#pragma once

#include <optional>
#include <vector>

#include "viikit/surface.hpp"

namespace viikit {

inline constexpr int kSearchSizeCap = 8;

struct SearchQuery {
    std::vector<long long> self_ints;              // multiset of self-intersections
    std::optional<BigInt> det;                     // required determinant
    std::optional<std::vector<Rational>> lambda;   // required anticanonical multiset
};

struct SearchMatch {
    CurveConfiguration config;
    BigInt det;
    std::optional<BigInt> k;
    std::optional<std::vector<Rational>> lambda;   // absent when the matrix is singular
    std::optional<BigInt> m;
};

// Enumerates every valid cycle/branch structure on the multiset (cycles up to
// rotation and reflection, at most one branch per cycle curve, node counts
// forced by the cycle length) and returns those matching the query, in a
// deterministic order. Throws SizeCapExceeded when the multiset has more than
// kSearchSizeCap entries.
std::vector<SearchMatch> search_configurations(const SearchQuery& query);

}  // namespace viikit
