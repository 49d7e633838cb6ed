#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "mfflow/combinatorics.hpp"
#include "mfflow/jet.hpp"
#include "mfflow/rational.hpp"

using namespace mfflow;

namespace {

std::mt19937 rng(777);

// oracle: count Dyck paths of length 2n (Catalan)
long count_dyck(int open, int close) {
    if (open == 0 && close == 0) return 1;
    long total = 0;
    if (open > 0) total += count_dyck(open - 1, close + 1);
    if (close > 0) total += count_dyck(open, close - 1);
    return total;
}

// oracle: number of set partitions of {1..m} into exactly k nonempty blocks
long count_partitions(int m, int k) {
    std::vector<int> assign(m, 0);
    long count = 0;
    std::function<void(int, int)> rec = [&](int i, int used) {
        if (i == m) {
            if (used == k) ++count;
            return;
        }
        for (int b = 0; b <= used && b < k; ++b) {
            assign[i] = b;
            rec(i + 1, std::max(used, b + 1));
        }
    };
    rec(0, 0);
    return count;
}

// oracle: independent chain-rule composition via jet recursion
Jet<Rational> compose_oracle(const Jet<Rational>& outer, const Jet<Rational>& inner) {
    if (!(inner.derivs[0] == outer.point)) throw std::domain_error("base point mismatch");
    if (outer.order() == 0 || inner.order() == 0)
        return Jet<Rational>(inner.point, {outer.derivs[0]});
    auto fp = jet_derivative(outer);
    auto g_trunc = jet_truncate(inner, inner.order() - 1);
    auto hp = jet_mul(compose_oracle(fp, g_trunc), jet_derivative(inner));
    std::vector<Rational> d(hp.order() + 2);
    d[0] = outer.derivs[0];
    for (int l = 0; l <= hp.order(); ++l) d[l + 1] = hp.derivs[l];
    return Jet<Rational>(inner.point, std::move(d));
}

// polynomial helpers for the faa di bruno cross-check
using Poly = std::vector<Rational>;

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly poly_compose(const Poly& f, const Poly& g) {
    Poly r{Rational(0)};
    for (auto it = f.rbegin(); it != f.rend(); ++it) {
        r = poly_mul(r, g);
        if (r.empty()) r.push_back(Rational(0));
        r[0] += *it;
    }
    return r;
}

Jet<Rational> poly_jet(const Poly& p, const Rational& x0, int order) {
    std::vector<Rational> d(order + 1, Rational(0));
    Poly cur = p;
    Int fact = 1;
    for (int l = 0; l <= order; ++l) {
        if (l > 0) {
            fact *= l;
            Poly next(std::max<size_t>(cur.size(), 2) - 1, Rational(0));
            for (size_t i = 1; i < cur.size(); ++i) next[i - 1] = cur[i] * Rational(static_cast<long>(i));
            cur = next;
        }
        Rational acc(0);
        for (auto it = cur.rbegin(); it != cur.rend(); ++it) acc = acc * x0 + *it;
        d[l] = acc * Rational(fact) / Rational(fact);  // derivative value, fact not needed here
        d[l] = acc;
    }
    return Jet<Rational>(x0, std::move(d));
}

Rational random_rational() {
    std::uniform_int_distribution<int> num(-8, 8);
    std::uniform_int_distribution<int> den(1, 5);
    return make_rational(num(rng), den(rng));
}

}  // namespace

TEST_CASE("fuss-catalan values") {
    CHECK(fuss_catalan(2, 0) == 1);
    CHECK(fuss_catalan(2, 2) == 3);
    CHECK(fuss_catalan(2, 3) == 12);
    CHECK(fuss_catalan(1, 4) == Int(count_dyck(4, 0)));
    for (int n = 0; n <= 6; ++n) CHECK(fuss_catalan(1, n) == Int(count_dyck(n, 0)));
}

TEST_CASE("fuss-catalan integrality across the table") {
    for (unsigned long s = 1; s <= 4; ++s)
        for (unsigned long n = 0; n <= 60; ++n) CHECK_NOTHROW(fuss_catalan(s, n));
}

TEST_CASE("fuss convolution identity") {
    CHECK(fuss_convolution(2, 0) == 1);
    CHECK(fuss_convolution(2, 2) == 7);  // 2 C(0)C(2) + C(1)^2 = 2*3 + 1
    Int direct = 0;
    for (unsigned long i = 0; i <= 10; ++i) direct += fuss_catalan(2, i) * fuss_catalan(2, 10 - i);
    CHECK(fuss_convolution(2, 10) == direct);
    for (unsigned long s = 1; s <= 3; ++s)
        for (unsigned long m = 0; m <= 30; ++m) CHECK_NOTHROW(fuss_convolution(s, m));
}

TEST_CASE("stirling numbers") {
    CHECK(stirling2(0, 0) == 1);
    CHECK(stirling2(5, 5) == 1);
    CHECK(stirling2(3, 2) == Int(count_partitions(3, 2)));
    CHECK(stirling2(4, 2) == Int(count_partitions(4, 2)));
    CHECK(stirling2(3, 2) == 3);
    CHECK(stirling2(4, 2) == 7);
    CHECK(stirling2(2, 5) == 0);
    for (int m = 0; m <= 8; ++m)
        for (int k = 0; k <= m; ++k) CHECK(stirling2(m, k) == Int(count_partitions(m, k)));
}

TEST_CASE("ordered bell numbers") {
    CHECK(ordered_bell(0) == 1);
    CHECK(ordered_bell(1) == 1);
    CHECK(ordered_bell(2) == 3);
    CHECK(ordered_bell(3) == 13);
    // a(n) = sum_k k! S(n,k)
    for (unsigned long n = 0; n <= 12; ++n) {
        Int acc = 0;
        for (unsigned long k = 0; k <= n; ++k) acc += factorial(k) * stirling2(n, k);
        CHECK(ordered_bell(n) == acc);
    }
    // a(n) <= e^n n!, via a rational lower bound of e
    Rational e_lo = rat_from_string("271828182845/100000000000");
    for (unsigned long n = 0; n <= 20; ++n)
        CHECK(Rational(ordered_bell(n)) <= rat_pow(e_lo, n) * Rational(factorial(n)));
}

TEST_CASE("partial bell polynomials") {
    for (int n = 1; n <= 6; ++n) {
        std::vector<Rational> x{make_rational(3, 2)};
        CHECK(bell_polynomial<Rational>(n, n, x) == rat_pow(make_rational(3, 2), n));
    }
    std::vector<Rational> x2{Rational(2), Rational(5)};
    CHECK(bell_polynomial<Rational>(3, 2, x2) == Rational(3) * Rational(2) * Rational(5));
    // B_{n,k}(1,...,1) = S(n,k)
    for (unsigned long n = 1; n <= 8; ++n)
        for (unsigned long k = 1; k <= n; ++k) {
            std::vector<Rational> ones(n - k + 1, Rational(1));
            CHECK(bell_polynomial<Rational>(n, k, ones) == Rational(stirling2(n, k)));
        }
    CHECK_THROWS(bell_polynomial<Rational>(3, 2, std::vector<Rational>{Rational(1)}));
}

TEST_CASE("faa di bruno: identity inner") {
    auto outer = Jet<Rational>(make_rational(1, 2),
                               {Rational(4), Rational(-1), make_rational(2, 3), Rational(7)});
    auto inner = Jet<Rational>::variable(make_rational(1, 2), 3);
    auto comp = faa_di_bruno_jet(outer, inner);
    for (int l = 0; l <= 3; ++l) CHECK(comp.derivs[l] == outer.derivs[l]);
}

TEST_CASE("faa di bruno: square of an exponential-type jet") {
    // inner has all derivatives equal to its value a; outer is y^2.
    // the composite has l-th derivative 2^l a^2.
    Rational a = make_rational(3, 7);
    int order = 5;
    auto inner = Jet<Rational>(Rational(0), std::vector<Rational>(order + 1, a));
    std::vector<Rational> sq{a * a, 2 * a, Rational(2)};
    sq.resize(order + 1, Rational(0));
    auto outer = Jet<Rational>(a, sq);
    auto comp = faa_di_bruno_jet(outer, inner);
    for (int l = 0; l <= order; ++l) CHECK(comp.derivs[l] == rat_pow(Rational(2), l) * a * a);
}

TEST_CASE("faa di bruno vs symbolic polynomial composition") {
    for (int rep = 0; rep < 40; ++rep) {
        Poly f(5), g(5);
        for (auto& c : f) c = random_rational();
        for (auto& c : g) c = random_rational();
        Rational x0 = random_rational();
        auto gj = poly_jet(g, x0, 5);
        auto fj = poly_jet(f, gj.derivs[0], 5);
        auto comp = faa_di_bruno_jet(fj, gj);
        auto expect = poly_jet(poly_compose(f, g), x0, 5);
        for (int l = 0; l <= 5; ++l) CHECK(comp.derivs[l] == expect.derivs[l]);
    }
}

TEST_CASE("faa di bruno vs recursive chain rule") {
    for (int rep = 0; rep < 60; ++rep) {
        Rational x0 = random_rational();
        std::vector<Rational> gd(7), fd(7);
        for (auto& v : gd) v = random_rational();
        for (auto& v : fd) v = random_rational();
        auto inner = Jet<Rational>(x0, gd);
        auto outer = Jet<Rational>(gd[0], fd);
        auto a = faa_di_bruno_jet(outer, inner);
        auto b = compose_oracle(outer, inner);
        for (int l = 0; l <= 6; ++l) CHECK(a.derivs[l] == b.derivs[l]);
    }
    auto inner = Jet<Rational>(Rational(0), {Rational(1), Rational(1)});
    auto outer = Jet<Rational>(Rational(5), {Rational(1), Rational(1)});
    CHECK_THROWS(faa_di_bruno_jet(outer, inner));
}

TEST_CASE("vandermonde convolution") {
    std::uniform_int_distribution<int> ab(0, 40);
    for (int rep = 0; rep < 100; ++rep) {
        unsigned long a = ab(rng), b = ab(rng);
        std::uniform_int_distribution<int> nd(0, static_cast<int>(a + b));
        unsigned long nu = nd(rng);
        Int acc = 0;
        for (unsigned long np = 0; np <= nu; ++np) acc += binomial(a, np) * binomial(b, nu - np);
        CHECK(acc == binomial(a + b, nu));
    }
}

TEST_CASE("weighted convolution identity for fuss-catalan pairs") {
    for (long n = 6; n <= 80; n += 2) {
        Rational lhs(0);
        for (long n1 = 4; n1 + 4 <= n + 2; n1 += 2) {
            long n2 = n + 2 - n1;
            lhs += Rational(n2) * Rational(fuss_catalan(2, n1 / 2 - 1)) *
                   Rational(fuss_catalan(2, n2 / 2 - 1));
        }
        Rational rhs = make_rational((n - 4) * (n + 2), 2 * n) * Rational(fuss_catalan(2, n / 2 - 1));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("partition multiset enumeration") {
    // p(6,3): partitions of 6 into 3 parts: 4+1+1, 3+2+1, 2+2+2
    auto p63 = partition_multisets(6, 3);
    CHECK(p63.size() == 3);
    for (const auto& lam : p63) {
        unsigned long parts = 0, weight = 0;
        for (size_t j = 0; j < lam.size(); ++j) {
            parts += lam[j];
            weight += lam[j] * (j + 1);
        }
        CHECK(parts == 3);
        CHECK(weight == 6);
    }
}
