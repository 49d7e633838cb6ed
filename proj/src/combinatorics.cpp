#include "mfflow/combinatorics.hpp"

#include <mutex>

namespace mfflow {

Int binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Int fuss_catalan(unsigned long s, unsigned long n) {
    if (s < 1) throw std::domain_error("fuss_catalan: s >= 1 required");
    Int num = binomial((s + 1) * n, n);
    Int den = Int(s) * n + 1;
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (r != 0) throw std::logic_error("fuss_catalan: non-integer value");
    return q;
}

Int fuss_convolution(unsigned long s, unsigned long m) {
    Int sum = 0;
    for (unsigned long i = 0; i <= m; ++i) sum += fuss_catalan(s, i) * fuss_catalan(s, m - i);
    Int den = Int(s + 1) * m + 2;
    Rational closed = make_rational(Int(2) * binomial((s + 1) * m + 2, m), den);
    if (closed.get_den() != 1 || closed.get_num() != sum)
        throw std::logic_error("fuss_convolution: identity violated (implementation bug)");
    return sum;
}

namespace {
std::mutex g_cache_mutex;
std::vector<std::vector<Int>> g_stirling;   // g_stirling[m][k]
std::vector<Int> g_ordered_bell;
}  // namespace

Int stirling2(unsigned long m, unsigned long k) {
    if (k > m) return 0;
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    while (g_stirling.size() <= m) {
        size_t row = g_stirling.size();
        std::vector<Int> cur(row + 1);
        cur[0] = (row == 0) ? 1 : 0;
        for (size_t j = 1; j <= row; ++j) {
            Int upper = (j < row) ? g_stirling[row - 1][j] : Int(0);
            cur[j] = Int(j) * upper + g_stirling[row - 1][j - 1];
        }
        g_stirling.push_back(std::move(cur));
    }
    return g_stirling[m][k];
}

Int ordered_bell(unsigned long n) {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    if (g_ordered_bell.empty()) g_ordered_bell.push_back(1);
    while (g_ordered_bell.size() <= n) {
        size_t cur = g_ordered_bell.size();
        Int acc = 0;
        for (size_t i = 1; i <= cur; ++i) acc += binomial(cur, i) * g_ordered_bell[cur - i];
        g_ordered_bell.push_back(acc);
    }
    return g_ordered_bell[n];
}

std::vector<std::vector<unsigned long>> partition_multisets(unsigned long n, unsigned long k) {
    std::vector<std::vector<unsigned long>> out;
    unsigned long width = n - k + 1;
    std::vector<unsigned long> lambda(width, 0);
    // choose multiplicities from the largest part down, pruning on both constraints
    std::function<void(unsigned long, unsigned long, unsigned long)> rec =
        [&](unsigned long j, unsigned long parts_left, unsigned long weight_left) {
            if (j == 0) {
                if (parts_left == 0 && weight_left == 0) out.push_back(lambda);
                return;
            }
            if (parts_left > weight_left) return;          // each part weighs >= 1
            if (weight_left > parts_left * j) return;      // parts of size <= j can't reach
            unsigned long max_lj = std::min(parts_left, weight_left / j);
            for (unsigned long lj = 0; lj <= max_lj; ++lj) {
                lambda[j - 1] = lj;
                rec(j - 1, parts_left - lj, weight_left - lj * j);
            }
            lambda[j - 1] = 0;
        };
    rec(width, k, n);
    return out;
}

}  // namespace mfflow
