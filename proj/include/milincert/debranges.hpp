#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "milincert/certifier.hpp"
#include "milincert/hpreal.hpp"
#include "milincert/weights.hpp"

namespace milincert {

// N x N exact rational matrix; system_matrix output is upper triangular.
struct RatMatrix {
    long n = 0;
    std::vector<Rat> a;  // row-major

    explicit RatMatrix(long n_) : n(n_), a(static_cast<size_t>(n_ * n_), Rat(0)) {}

    Rat& at(long i, long j) { return a[static_cast<size_t>(i * n + j)]; }
    const Rat& at(long i, long j) const { return a[static_cast<size_t>(i * n + j)]; }

    std::vector<std::vector<double>> to_double() const {
        std::vector<std::vector<double>> m(static_cast<size_t>(n),
                                           std::vector<double>(static_cast<size_t>(n)));
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = at(i, j).get_d();
        return m;
    }
};

// Row k (1-based): x_k' = -k x_k + 2(k+1) x_{k+1} - 2(k+2) x_{k+2} + ...
inline RatMatrix system_matrix(long N) {
    if (N < 1) throw std::invalid_argument("system_matrix: need N >= 1");
    RatMatrix A(N);
    for (long k = 1; k <= N; ++k) {
        A.at(k - 1, k - 1) = Rat(-k);
        int sign = 1;
        for (long m = k + 1; m <= N; ++m) {
            A.at(k - 1, m - 1) = Rat(sign * 2 * m);
            sign = -sign;
        }
    }
    return A;
}

using DMatrix = std::vector<std::vector<double>>;

namespace detail {

inline DMatrix dmat_identity(size_t n) {
    DMatrix I(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i) I[i][i] = 1.0;
    return I;
}

inline DMatrix dmat_mul(const DMatrix& a, const DMatrix& b) {
    size_t n = a.size();
    DMatrix c(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

}  // namespace detail

// e^{tA} by scaled Taylor series with repeated squaring. The matrices here
// are tiny (N <= ~12) and triangular with eigenvalues -1..-N, well inside
// the range where plain scaled series converges fast.
inline DMatrix matrix_exp(const RatMatrix& A, double t) {
    if (t < 0) throw std::invalid_argument("matrix_exp: need t >= 0");
    size_t n = static_cast<size_t>(A.n);
    DMatrix M = A.to_double();
    double norm = 0;
    for (const auto& row : M)
        for (double x : row) norm = std::max(norm, std::abs(x * t));
    int squarings = 0;
    double scale = t;
    while (norm > 0.5) {
        norm /= 2;
        scale /= 2;
        ++squarings;
    }
    DMatrix term = detail::dmat_identity(n);
    DMatrix sum = term;
    DMatrix As(n, std::vector<double>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) As[i][j] = M[i][j] * scale;
    for (int k = 1; k <= 24; ++k) {
        term = detail::dmat_mul(term, As);
        for (auto& row : term)
            for (double& x : row) x /= k;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) sum[i][j] += term[i][j];
    }
    for (int s = 0; s < squarings; ++s) sum = detail::dmat_mul(sum, sum);
    return sum;
}

// The de Branges weight system tau_k for a truncated derived sequence:
// tau_k(0) = mu_k, tau_{N+1} = 0, and the closed-form derivative
// tau_k'(t) = -k e^{-kt} Q_k(1 - 2 e^{-t}) with exact Q_k coefficients.
class TauSystem {
  public:
    explicit TauSystem(DerivedSeq seq) : seq_(std::move(seq)) {
        for (long k = 1; k <= seq_.cutoff(); ++k) q_.push_back(build_Q(seq_, k));
    }

    const DerivedSeq& seq() const { return seq_; }
    long size() const { return seq_.cutoff(); }

    const RatPoly& Q(long k) const {
        if (k < 1 || k > size()) throw std::invalid_argument("Q index out of range");
        return q_[static_cast<size_t>(k - 1)];
    }

    HPReal tau_prime(long k, const HPReal& t) const {
        if (t.v < 0) throw std::invalid_argument("tau_prime: need t >= 0");
        const RatPoly& Q = this->Q(k);
        HPReal ekt = hp_exp(-HPReal(k) * t);
        HPReal x = HPReal(1) - HPReal(2) * hp_exp(-t);
        HPReal acc(0);
        for (int i = Q.degree(); i >= 0; --i)
            acc = acc * x + HPReal::exact(Q.coeff(i));
        return -HPReal(k) * ekt * acc;
    }

  private:
    DerivedSeq seq_;
    std::vector<RatPoly> q_;
};

// Demonstration that the sign conditions v_k >= 0 are not sufficient: with
// v = (eps, eps, 1-2eps) close to (0,0,1) and initial data solving
// A_3 x0 = -v, the surrogate tau_1'(t) = -(e^{tA_3} v)_1 turns positive for
// small t > 0 because entry (1,3) of e^{tA_3} is negative there.
struct InsufficiencyWitness {
    double t_witness = 0;
    double first_entry_value = 0;  // (e^{tA_3} v)_1, negative at the witness
    double tau1_prime_surrogate = 0;
};

inline InsufficiencyWitness insufficiency_demo(double epsilon) {
    if (!(epsilon > 0 && epsilon < 1))
        throw std::invalid_argument("insufficiency_demo: need 0 < epsilon < 1");
    RatMatrix A3 = system_matrix(3);
    std::vector<double> v = {epsilon, epsilon, 1 - 2 * epsilon};
    for (int i = 1; i <= 1000; ++i) {
        double t = 0.0005 * i;
        DMatrix E = matrix_exp(A3, t);
        double first = E[0][0] * v[0] + E[0][1] * v[1] + E[0][2] * v[2];
        if (first < 0) return {t, first, -first};
    }
    throw std::runtime_error("demo failed: no sign change found on the t-grid");
}

}  // namespace milincert
