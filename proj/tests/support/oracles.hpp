#pragma once

// Reference computations used to cross-check the library.  Everything here is
// written from first principles -- coefficient algebra, direct convolution,
// brute-force counting -- and deliberately shares no code with the headers
// under test.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cx = std::complex<double>;

// --------------------------------------------------------------------------
// Polynomial model spaces.  K_{z^m} has basis {1, z, ..., z^{m-1}}; a kernel
// vector is a coefficient list of length m.  Multiplying by z^k shifts the
// list; the product lies in K_{z^n} exactly when nothing survives at degree
// >= n.  Checking every basis vector decides w*K_{z^m} subset of K_{z^n}.
inline bool shifted_poly_contained(int m, int n, int k) {
    for (int j = 0; j < m; ++j) {
        std::vector<double> coeff(static_cast<std::size_t>(j + k + 1), 0.0);
        coeff[static_cast<std::size_t>(j + k)] = 1.0;
        for (std::size_t d = 0; d < coeff.size(); ++d)
            if (coeff[d] != 0.0 && static_cast<int>(d) >= n) return false;
    }
    return true;
}

// --------------------------------------------------------------------------
// Blaschke products evaluated directly from the zero list.
inline cx disk_blaschke(const std::vector<cx>& zeros, cx z) {
    cx prod = 1.0;
    for (cx a : zeros) {
        if (std::abs(a) == 0.0) {
            prod *= z;
        } else {
            prod *= (std::abs(a) / a) * (a - z) / (1.0 - std::conj(a) * z);
        }
    }
    return prod;
}

inline cx halfplane_blaschke(const std::vector<cx>& zeros, cx z) {
    cx prod = 1.0;
    for (cx a : zeros) prod *= (z - a) / (z - std::conj(a));
    return prod;
}

// --------------------------------------------------------------------------
// Rank of the reproducing-kernel Gram matrix of K_B sampled at random probe
// points.  For a Blaschke product with d zeros (counted with multiplicity)
// the kernel (1 - conj(B(w))B(z)) / (1 - conj(w) z) has rank exactly d once
// the probe count exceeds d.
inline int gram_eig_rank(const Eigen::MatrixXcd& H) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    const auto& ev = es.eigenvalues();
    double top = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) top = std::max(top, ev[i]);
    if (top <= 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev[i] > 1e-8 * top) ++rank;
    return rank;
}

inline int gram_rank_disk(const std::vector<cx>& zeros, int probes, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<cx> w(static_cast<std::size_t>(probes));
    for (auto& p : w) {
        double r = 0.7 * std::sqrt(unit(rng));
        double th = 2.0 * M_PI * unit(rng) - M_PI;
        p = std::polar(r, th);
    }
    Eigen::MatrixXcd G(probes, probes);
    for (int j = 0; j < probes; ++j)
        for (int k = 0; k < probes; ++k) {
            cx bj = disk_blaschke(zeros, w[static_cast<std::size_t>(j)]);
            cx bk = disk_blaschke(zeros, w[static_cast<std::size_t>(k)]);
            G(j, k) = (1.0 - std::conj(bk) * bj) /
                      (1.0 - std::conj(w[static_cast<std::size_t>(k)]) * w[static_cast<std::size_t>(j)]);
        }
    return gram_eig_rank(G);
}

inline int gram_rank_halfplane(const std::vector<cx>& zeros, int probes, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> xs(-4.0, 4.0);
    std::uniform_real_distribution<double> ys(0.4, 3.0);
    std::vector<cx> w(static_cast<std::size_t>(probes));
    for (auto& p : w) p = cx(xs(rng), ys(rng));
    // (1 - conj(B(w_k))B(w_j)) / (w_j - conj(w_k)) is skew-Hermitian; the
    // reproducing kernel carries a factor i/(2 pi), so i*G is the Hermitian
    // positive-semidefinite Gram matrix whose rank we want.
    Eigen::MatrixXcd G(probes, probes);
    for (int j = 0; j < probes; ++j)
        for (int k = 0; k < probes; ++k) {
            cx bj = halfplane_blaschke(zeros, w[static_cast<std::size_t>(j)]);
            cx bk = halfplane_blaschke(zeros, w[static_cast<std::size_t>(k)]);
            G(j, k) = (1.0 - std::conj(bk) * bj) /
                      (w[static_cast<std::size_t>(j)] - std::conj(w[static_cast<std::size_t>(k)]));
        }
    return gram_eig_rank(cx(0.0, 1.0) * G);
}

// Nullity of the leading N x N section of the Toeplitz matrix of z^{-m}
// acting on H^2 of the disk: entries <T z^j, z^i> = 1 when j = i + m.
inline int toeplitz_section_nullity(int m, int N) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < N; ++i)
        if (i + m < N) A(i, i + m) = 1.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    lu.setThreshold(1e-10);
    return N - static_cast<int>(lu.rank());
}

// --------------------------------------------------------------------------
// Summation oracle: sum_{n=1}^{N} 1/(1+n^2), accumulated small-to-large, and
// the closed form (pi*coth(pi) - 1)/2 of the full series.
inline double inv_one_plus_square_sum(long N) {
    double s = 0.0;
    for (long n = N; n >= 1; --n) s += 1.0 / (1.0 + static_cast<double>(n) * static_cast<double>(n));
    return s;
}

inline double inv_one_plus_square_closed() {
    return (M_PI / std::tanh(M_PI) - 1.0) / 2.0;
}

// --------------------------------------------------------------------------
// Outer-function moduli.  poisson_disk_modulus reconstructs |O(r e^{i th})|
// by direct convolution of the boundary log-modulus with the Poisson kernel
// on M uniform nodes.  halfplane_exp_cauchy_modulus is the harmonic
// extension of 1/(1+x^2) in closed form.
template <class F>
inline double poisson_disk_modulus(F&& logmod, double r, double theta, std::size_t M) {
    double acc = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
        double t = -M_PI + 2.0 * M_PI * (static_cast<double>(j) + 0.5) / static_cast<double>(M);
        double pk = (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(theta - t) + r * r);
        acc += pk * logmod(t);
    }
    return std::exp(acc / static_cast<double>(M));
}

inline double halfplane_exp_cauchy_modulus(double x, double y) {
    double v = 1.0 + y;
    return std::exp(v / (x * x + v * v));
}

// --------------------------------------------------------------------------
// Counting and deviation.  count_upto uses the two-branch convention: for
// x >= 0 count points in [0, x], for x < 0 count points in (x, 0) with a
// minus sign.  Linear scan, no shared code with the library.
inline double count_upto(const std::vector<double>& pts, double x) {
    long c = 0;
    if (x >= 0.0) {
        for (double p : pts)
            if (p >= 0.0 && p <= x) ++c;
        return static_cast<double>(c);
    }
    for (double p : pts)
        if (p > x && p < 0.0) ++c;
    return -static_cast<double>(c);
}

// Exact integral of |n(y) - a*y| * t / (1 + (t*y)^2) over [lo, hi]: the
// change-of-variables image of the deviation integral of the scaled sequence
// t*Lambda at slope a/t.  Piecewise closed form, split at jump points of the
// counting function and at sign changes of the integrand.
inline double transformed_deficit(const std::vector<double>& pts, double a, double t,
                                  double lo, double hi) {
    std::vector<double> cuts{lo, hi};
    if (lo < 0.0 && hi > 0.0) cuts.push_back(0.0);
    for (double p : pts)
        if (p > lo && p < hi) cuts.push_back(p);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto F = [&](double c, double y) {
        // antiderivative of (c - a*y) * t / (1 + (t*y)^2)
        return c * std::atan(t * y) - (a / (2.0 * t)) * std::log1p(t * t * y * y);
    };
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double l = cuts[i], r = cuts[i + 1];
        if (r <= l) continue;
        double c = count_upto(pts, 0.5 * (l + r));
        double y0 = (a != 0.0) ? c / a : l - 1.0;  // sign change of c - a*y
        auto piece = [&](double pl, double pr) {
            double v = F(c, pr) - F(c, pl);
            return std::fabs(v);
        };
        if (y0 > l && y0 < r)
            total += piece(l, y0) + piece(y0, r);
        else
            total += piece(l, r);
    }
    return total;
}

// --------------------------------------------------------------------------
// Brute-force minimum window count: slide a half-open window (c - r, c + r]
// across [lo + r, hi - r] on a dense grid of centers and report the smallest
// point count seen.
inline long min_window_count(const std::vector<double>& pts, double r, double lo, double hi,
                             std::size_t scan) {
    std::vector<double> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    long best = -1;
    for (std::size_t i = 0; i <= scan; ++i) {
        double c = (lo + r) + (hi - lo - 2.0 * r) * static_cast<double>(i) / static_cast<double>(scan);
        auto b = std::upper_bound(sorted.begin(), sorted.end(), c - r);
        auto e = std::upper_bound(sorted.begin(), sorted.end(), c + r);
        long cnt = static_cast<long>(e - b);
        if (best < 0 || cnt < best) best = cnt;
    }
    return best;
}

// --------------------------------------------------------------------------
// Total unwrapped phase increase of f along [lo, hi], sampled at M+1 points.
// Valid when the true phase moves by less than pi between samples.
template <class F>
inline double unwrapped_phase_increase(F&& f, double lo, double hi, std::size_t M) {
    double total = 0.0;
    cx prev = f(lo);
    for (std::size_t i = 1; i <= M; ++i) {
        double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(M);
        cx cur = f(x);
        total += std::arg(cur / prev);
        prev = cur;
    }
    return total;
}

}  // namespace oracle
