#include "mfflow/borel.hpp"

#include <algorithm>
#include <stdexcept>

#include "mfflow/quadrature.hpp"

namespace mfflow {

Rational FormalSeries::partial_sum(const Rational& z, int N_terms) const {
    Rational acc(0);
    int top = std::min<int>(N_terms, static_cast<int>(a.size()));
    for (int k = top - 1; k >= 0; --k) acc = acc * z + a[k];
    return acc;
}

FormalSeries borel_transform(const FormalSeries& F) {
    FormalSeries B = F;
    Int f = 1;
    for (size_t k = 0; k < B.a.size(); ++k) {
        if (k > 0) f *= static_cast<long>(k);
        B.a[k] /= Rational(f);
    }
    return B;
}

FormalSeries borel_untransform(const FormalSeries& B) {
    FormalSeries F = B;
    Int f = 1;
    for (size_t k = 0; k < F.a.size(); ++k) {
        if (k > 0) f *= static_cast<long>(k);
        F.a[k] *= Rational(f);
    }
    return F;
}

Real PadeApproximant::eval(const Real& t) const { return num.eval(t) / den.eval(t); }

std::optional<Real> PadeApproximant::pole_on_ray(const Real& t_max) const {
    // bisection on sign changes of the denominator over [0, t_max]
    const int grid = 512;
    Real prev = den.eval(Real(0l));
    for (int i = 1; i <= grid; ++i) {
        Real t = t_max * Real(static_cast<long>(i)) / Real(static_cast<long>(grid));
        Real cur = den.eval(t);
        if (prev.sign() * cur.sign() < 0) {
            Real lo = t_max * Real(static_cast<long>(i - 1)) / Real(static_cast<long>(grid));
            Real hi = t;
            for (int it = 0; it < 200; ++it) {
                Real mid = (lo + hi) / Real(2l);
                if (den.eval(mid).sign() * den.eval(lo).sign() <= 0)
                    hi = mid;
                else
                    lo = mid;
            }
            return (lo + hi) / Real(2l);
        }
        prev = cur;
    }
    return std::nullopt;
}

PadeApproximant diagonal_pade(const FormalSeries& B, int m) {
    auto coeff = [&](int k) { return k < static_cast<int>(B.a.size()) ? B.a[k] : Rational(0); };
    for (; m >= 0; --m) {
        // solve sum_{j=0}^{m} q_j a_{m+k-j} = 0, k = 1..m, q_0 = 1
        std::vector<std::vector<Rational>> M(m, std::vector<Rational>(m + 1, Rational(0)));
        for (int k = 1; k <= m; ++k) {
            for (int j = 1; j <= m; ++j) M[k - 1][j - 1] = coeff(m + k - j);
            M[k - 1][m] = -coeff(m + k);
        }
        // exact Gaussian elimination with partial (nonzero) pivoting
        bool singular = false;
        std::vector<Rational> q(m, Rational(0));
        for (int col = 0; col < m && !singular; ++col) {
            int piv = -1;
            for (int row = col; row < m; ++row)
                if (M[row][col] != 0) {
                    piv = row;
                    break;
                }
            if (piv < 0) {
                singular = true;
                break;
            }
            std::swap(M[col], M[piv]);
            for (int row = col + 1; row < m; ++row) {
                if (M[row][col] == 0) continue;
                Rational fct = M[row][col] / M[col][col];
                for (int j = col; j <= m; ++j) M[row][j] -= fct * M[col][j];
            }
        }
        if (!singular) {
            for (int row = m - 1; row >= 0; --row) {
                Rational acc = M[row][m];
                for (int j = row + 1; j < m; ++j) acc -= M[row][j] * q[j];
                q[row] = acc / M[row][row];
            }
            PadeApproximant pa;
            pa.order = m;
            pa.den.c.assign(m + 1, Rational(0));
            pa.den.c[0] = 1;
            for (int j = 1; j <= m; ++j) pa.den.c[j] = q[j - 1];
            pa.den.trim();
            pa.num.c.assign(m + 1, Rational(0));
            for (int k = 0; k <= m; ++k) {
                Rational acc(0);
                for (int j = 0; j <= std::min(k, m); ++j)
                    acc += (j == 0 ? Rational(1) : q[j - 1]) * coeff(k - j);
                pa.num.c[k] = acc;
            }
            pa.num.trim();
            return pa;
        }
    }
    throw std::logic_error("diagonal_pade: unreachable (m = 0 is never singular)");
}

namespace {

template <typename Z>
struct LaplaceTraits;

template <>
struct LaplaceTraits<Real> {
    static Real re_inv(const Real& z) { return Real(1l) / z; }
    static Real weight(const Real& t, const Real& z) { return exp(-(t / z)); }
};

template <>
struct LaplaceTraits<Complex> {
    static Real re_inv(const Complex& z) { return z.re / (z.re * z.re + z.im * z.im); }
    static Complex weight(const Real& t, const Complex& z) {
        Complex inv = Complex(Real(1l), Real(0l)) / z;
        return cexp(Complex(-(t * inv.re), -(t * inv.im)));
    }
};

}  // namespace

template <typename Z, typename V>
static V borel_sum_impl(const FormalSeries& B, const Z& z, const BorelSumOptions& opt,
                        Real* tail_out) {
    Real x = LaplaceTraits<Z>::re_inv(z);
    if (!(x > Real(0l))) throw std::domain_error("borel_sum: Re(1/z) must be positive");
    Rational tol_q = opt.quad_tol == 0 ? rat_pow(Rational(10), -30) : opt.quad_tol;
    Real tol(tol_q);

    // cutoff: push T until the damped continuation magnitude is under tol
    Real T = (log(Real(1l) / tol) + Real(12l)) / x;

    std::function<Real(const Real&)> bhat;
    PadeApproximant pa;
    Real switch_t;
    bool use_pade = opt.continuation == Continuation::pade && B.a.size() >= 3;
    if (use_pade) {
        int m = opt.pade_order > 0 ? opt.pade_order
                                   : std::min<int>(8, (static_cast<int>(B.a.size()) - 1) / 2);
        pa = diagonal_pade(B, m);
        if (auto pole = pa.pole_on_ray(T))
            throw std::runtime_error("borel_sum: approximant pole on the integration ray near t = " +
                                     std::to_string(pole->to_double()));
        // effective radius estimate from the coefficient growth
        Real rad(1l);
        for (size_t k = B.a.size() / 2; k < B.a.size(); ++k) {
            if (B.a[k] == 0) continue;
            Real rk = pow(abs(Real(B.a[k])), Real(Rational(-1, static_cast<long>(k))));
            if (rk < rad) rad = rk;
        }
        switch_t = opt.switch_point == 0 ? rad / Real(2l) : Real(opt.switch_point);
        if (switch_t > T) switch_t = T;
        bhat = [&pa, &B, switch_t](const Real& t) {
            if (t <= switch_t) {
                Real acc(0l);
                for (auto it = B.a.rbegin(); it != B.a.rend(); ++it) acc = acc * t + Real(*it);
                return acc;
            }
            return pa.eval(t);
        };
    } else {
        switch_t = T;
        bhat = [&B](const Real& t) {
            Real acc(0l);
            for (auto it = B.a.rbegin(); it != B.a.rend(); ++it) acc = acc * t + Real(*it);
            return acc;
        };
    }

    auto integrand = [&](const Real& t) -> V {
        return LaplaceTraits<Z>::weight(t, z) * bhat(t);
    };

    V total;
    if constexpr (std::is_same_v<Z, Real>) {
        total = tanh_sinh(integrand, Real(0l), switch_t, tol);
        if (switch_t < T) total = total + tanh_sinh(integrand, switch_t, T, tol);
        total = total / z;
    } else {
        auto cintegrand = [&](const Real& t) -> Complex {
            Complex w = LaplaceTraits<Complex>::weight(t, z);
            Real b = bhat(t);
            return {w.re * b, w.im * b};
        };
        total = tanh_sinh_complex(cintegrand, Real(0l), switch_t, tol);
        if (switch_t < T)
            total = total + tanh_sinh_complex(cintegrand, switch_t, T, tol);
        total = total / z;
    }
    if (tail_out) *tail_out = abs(bhat(T)) * exp(-(T * x)) / x;
    return total;
}

BorelSumResult borel_sum(const FormalSeries& B, const Real& z, const BorelSumOptions& opt) {
    BorelSumResult out;
    out.value = borel_sum_impl<Real, Real>(B, z, opt, &out.tail_estimate);
    return out;
}

Complex borel_sum(const FormalSeries& B, const Complex& z, const BorelSumOptions& opt) {
    return borel_sum_impl<Complex, Complex>(B, z, opt, nullptr);
}

SokalCertificate sokal_certificate(const std::function<Complex(const Complex&, int)>& remainder,
                                   const Real& R, int N_max, const std::vector<Complex>& zs,
                                   const Real& A_ceiling) {
    if (N_max < 2) throw std::invalid_argument("sokal_certificate: N_max >= 2");
    SokalCertificate cert;
    cert.R = R;
    for (const auto& z : zs) {
        Real re_inv = z.re / (z.re * z.re + z.im * z.im);
        if (!(re_inv > Real(1l) / R))
            throw std::invalid_argument("sokal_certificate: sample outside the circle");
    }
    // m_N = max_z |R_N(z)| / (N! |z|^N)
    std::vector<Real> m(N_max + 1, Real(0l));
    for (int N = 1; N <= N_max; ++N) {
        for (const auto& z : zs) {
            Real r = cabs(remainder(z, N));
            cert.samples.push_back({z, N, r});
            Real norm = Real(Rational(factorial(N))) * pow(cabs(z), static_cast<long>(N));
            Real ratio = r / norm;
            if (ratio > m[N]) m[N] = ratio;
        }
    }
    // fitted sigma: the largest per-order implied ratio, clamped to the grid
    Real sigma_fit(0l);
    std::vector<Real> sigma_hat;
    for (int N = 1; N + 1 <= N_max; ++N) {
        if (m[N].is_zero()) continue;
        Real s = m[N + 1] / m[N];
        sigma_hat.push_back(s);
        if (s > sigma_fit) sigma_fit = s;
    }
    const Real grid_lo(make_rational(1, 1000)), grid_hi(Rational(1000));
    if (sigma_fit < grid_lo) sigma_fit = grid_lo;
    bool in_grid = sigma_fit <= grid_hi;
    if (!in_grid) sigma_fit = grid_hi;
    Real A(0l);
    for (int N = 1; N <= N_max; ++N) {
        Real cand = m[N] / pow(sigma_fit, static_cast<long>(N));
        if (cand > A) A = cand;
    }
    cert.A = A;
    cert.sigma = sigma_fit;
    // growth trend: monotone increase of the implied sigma across all orders
    // with a material total rise signals super-factorial remainders
    bool growing = sigma_hat.size() >= 3;
    for (size_t i = 1; i < sigma_hat.size() && growing; ++i)
        if (!(sigma_hat[i] > sigma_hat[i - 1])) growing = false;
    bool material = growing && sigma_hat.back() >= Real(2l) * sigma_hat.front();
    cert.consistent = in_grid && A <= A_ceiling && !material;
    if (material) cert.note = "implied sigma grows monotonically across orders";
    if (!in_grid) cert.note = "implied sigma outside the candidate grid";
    return cert;
}

AsymptoticityReport asymptoticity_check(const std::vector<ExpansionSample>& samples,
                                        const std::vector<int>& orders) {
    AsymptoticityReport rep;
    for (int K : orders) {
        std::vector<Real> lx, ly;
        for (const auto& s : samples) {
            Rational partial(0);
            for (int m = K; m >= 1; --m) partial = partial * s.gtilde + s.c.at(m);
            partial *= s.gtilde;
            Rational err = rat_abs(s.f2_value - partial);
            rep.rows.push_back({s.gtilde, K, err});
            lx.push_back(log(Real(s.gtilde)));
            ly.push_back(log(Real(err)));
        }
        Real n(static_cast<long>(lx.size()));
        Real sx(0l), sy(0l), sxy(0l), sxx(0l);
        for (size_t i = 0; i < lx.size(); ++i) {
            sx += lx[i];
            sy += ly[i];
            sxy += lx[i] * ly[i];
            sxx += lx[i] * lx[i];
        }
        rep.slope[K] = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return rep;
}

}  // namespace mfflow
