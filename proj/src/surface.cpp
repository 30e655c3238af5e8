#include "viikit/surface.hpp"

#include <string>
#include <utility>

namespace viikit {

IntersectionData intersection_matrix(const CurveConfiguration& config) {
    config.validate();
    const int p = config.cycle_size();
    const int total = config.total_curves();
    IntersectionData data;
    data.matrix.assign((size_t)total, std::vector<BigInt>((size_t)total, BigInt(0)));
    data.labels.reserve((size_t)total);

    for (int i = 0; i < p; ++i) {
        data.matrix[(size_t)i][(size_t)i] = BigInt(-config.cycle[(size_t)i].self);
        data.labels.push_back("D" + std::to_string(i));
    }
    if (p == 2) {
        // The two curves close the cycle by meeting twice.
        data.matrix[0][1] = BigInt(-2);
        data.matrix[1][0] = BigInt(-2);
    } else if (p >= 3) {
        for (int i = 0; i < p; ++i) {
            int j = (i + 1) % p;
            data.matrix[(size_t)i][(size_t)j] = BigInt(-1);
            data.matrix[(size_t)j][(size_t)i] = BigInt(-1);
        }
    }

    int row = p;
    for (size_t b = 0; b < config.branches.size(); ++b) {
        const Branch& br = config.branches[b];
        const int k = (int)br.chain.size();
        for (int i = 0; i < k; ++i) {
            data.labels.push_back("C" + std::to_string(b) + "_" + std::to_string(i));
            data.matrix[(size_t)(row + i)][(size_t)(row + i)] = BigInt(-br.chain[(size_t)i]);
            if (i + 1 < k) {
                data.matrix[(size_t)(row + i)][(size_t)(row + i + 1)] = BigInt(-1);
                data.matrix[(size_t)(row + i + 1)][(size_t)(row + i)] = BigInt(-1);
            }
        }
        // The bottom chain curve is the one meeting its cycle curve.
        data.matrix[(size_t)(row + k - 1)][(size_t)br.attach] = BigInt(-1);
        data.matrix[(size_t)br.attach][(size_t)(row + k - 1)] = BigInt(-1);
        row += k;
    }
    return data;
}

BigInt determinant(const IntMatrix& m) {
    const size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw Error("determinant of a non-square matrix");
    if (n == 0) return 1;

    IntMatrix a = m;
    BigInt prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        size_t pivot = k;
        while (pivot < n && a[pivot][k] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != k) {
            std::swap(a[pivot], a[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;  // exact by Bareiss
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : BigInt(-a[n - 1][n - 1]);
}

BigInt torsion_k(const IntMatrix& m) {
    BigInt det = determinant(m);
    auto root = is_perfect_square(det);
    if (!root) throw NotPerfectSquare(std::move(det));
    return *root + 1;
}

std::vector<BigInt> adjunction_rhs(const CurveConfiguration& config) {
    config.validate();
    std::vector<BigInt> b;
    b.reserve((size_t)config.total_curves());
    for (const CycleCurve& c : config.cycle) b.push_back(BigInt(-c.self - 2 + 2 * c.nodes));
    for (const Branch& br : config.branches)
        for (long long self : br.chain) b.push_back(BigInt(-self - 2));
    return b;
}

std::vector<Rational> solve_linear(const IntMatrix& m, const std::vector<BigInt>& b) {
    const size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw Error("solve_linear: non-square matrix");
    if (b.size() != n) throw Error("solve_linear: right-hand side size mismatch");

    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) a[i][j] = Rational(m[i][j]);
        a[i][n] = Rational(b[i]);
    }
    for (size_t k = 0; k < n; ++k) {
        size_t pivot = k;
        while (pivot < n && a[pivot][k].is_zero()) ++pivot;
        if (pivot == n) throw SingularMatrix("intersection matrix is singular");
        if (pivot != k) std::swap(a[pivot], a[k]);
        for (size_t i = 0; i < n; ++i) {
            if (i == k || a[i][k].is_zero()) continue;
            Rational f = a[i][k] / a[k][k];
            for (size_t j = k; j <= n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    std::vector<Rational> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
    return x;
}

AnticanonicalResult anticanonical(const CurveConfiguration& config) {
    IntersectionData data = intersection_matrix(config);
    AnticanonicalResult result;
    result.lambda = solve_linear(data.matrix, adjunction_rhs(config));
    BigInt m = 1;
    for (const Rational& lam : result.lambda) m = big_lcm(m, lam.den());
    result.m = m;
    if (auto root = is_perfect_square(determinant(data.matrix))) result.k = *root + 1;
    return result;
}

AnalysisReport analyze(const CurveConfiguration& config) {
    config.validate();
    AnalysisReport report;
    report.config = config;
    report.intersection = intersection_matrix(config);
    report.det = determinant(report.intersection.matrix);

    if (report.det == 0) {
        report.k_note =
            "determinant is 0, so sqrt(det) + 1 degenerates; the torsion order is left undefined";
    } else {
        try {
            report.k = torsion_k(report.intersection.matrix);
        } catch (const NotPerfectSquare& e) {
            report.k_note = e.what();
        }
    }

    try {
        report.anticanonical = anticanonical(config);
    } catch (const SingularMatrix& e) {
        report.anticanonical_note = std::string("no anticanonical solution: ") + e.what();
    }

    report.system = build_delta(config);
    try {
        if (report.system.p() >= 2)
            for (int j = 0; j < report.system.p(); ++j)
                report.equations.push_back(coefficients(report.system, j));
        try {
            auto solutions = solve_system(report.system);
            report.plus_certificate = verify_negativity(solutions.first);
            report.minus_certificate = verify_negativity(solutions.second);
            report.solutions = std::move(solutions);
        } catch (const ComplexRoots& e) {
            // Equations stay reported; only the roots are complex.
            report.cs_note = std::string("no real Camacho-Sad solution: ") + e.what();
        }
    } catch (const DegenerateSystem& e) {
        report.equations.clear();
        report.cs_note = std::string("degenerate Camacho-Sad system: ") + e.what();
    }

    if (report.k && report.solutions) {
        QuadraticNumber k_value{Rational(*report.k)};
        report.mu_plus_equals_k =
            report.solutions->first.mu.is_rational() && report.solutions->first.mu == k_value;
    }
    return report;
}

}  // namespace viikit
