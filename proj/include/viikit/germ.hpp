#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "viikit/config.hpp"
#include "viikit/rational.hpp"

namespace viikit {

struct InvalidGerm : Error {
    InvalidGerm(std::string what, std::vector<std::string> v)
        : Error(std::move(what)), violations(std::move(v)) {}
    std::vector<std::string> violations;
};

struct InvalidReduction : Error {
    using Error::Error;
};

// Exact coefficient or a named symbolic marker (germs are families; symbols
// count as nonzero and are carried through reduction verbatim).
using GermScalar = std::variant<Rational, std::string>;

bool scalar_is_zero(const GermScalar& s);
bool scalar_is_one(const GermScalar& s);
std::string scalar_str(const GermScalar& s);
GermScalar parse_scalar(const std::string& text);

// Contracting germ in normal form
//   F(z, zeta) = (lambda z zeta^s + P(zeta) + c zeta^{sk/(k-1)}, zeta^k),
// P = zeta^j + ... + c_s zeta^s, with c = 0 unless (k-1) | sk and lambda = 1.
struct Germ {
    long long k = 2;
    long long s = 1;
    long long j = 1;
    std::map<long long, GermScalar> coeffs;  // exponent -> c_p, j <= p <= s
    GermScalar lambda = std::string("lambda");
    GermScalar c_extra = Rational(0);
};

std::vector<std::string> germ_violations(const Germ& g);
void validate(const Germ& g);  // throws InvalidGerm with the violation list

// m = (k-1) / gcd(k-1, s).
long long index_m(const Germ& g);

// One reduction step: requires q | (k-1) and (k-1) | q s; with
// r' = floor(q j / k) produces (s', j', P') = (q s - r'(k-1), q j - r' k,
// sum_p c_p zeta^{q p - r' k}), same k and lambda. q = 1 returns the germ
// unchanged; q >= 2 additionally requires c_extra = 0.
Germ reduce(const Germ& g, long long q);

struct ConsistencyReport {
    std::optional<BigInt> config_k;
    std::optional<std::string> config_k_note;
    long long germ_k = 0;
    bool k_match = false;
    std::optional<BigInt> config_m;
    std::optional<std::string> config_m_note;
    long long germ_m = 0;
    bool m_match = false;
    bool pass() const { return k_match && m_match; }
};

// Joins the surface invariants with the germ formulas: torsion vs k, index vs
// (k-1)/gcd(k-1,s). Component failures are embedded as notes.
ConsistencyReport cross_check(const CurveConfiguration& config, const Germ& germ);

}  // namespace viikit
