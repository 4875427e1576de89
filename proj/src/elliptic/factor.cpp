#include "twistrank/elliptic/factor.hpp"

#include <algorithm>
#include <vector>

namespace twistrank::elliptic {

namespace {

constexpr unsigned kTrialLimit = 1'000'000;

const std::vector<unsigned>& small_primes() {
    static const std::vector<unsigned> primes = [] {
        std::vector<bool> composite(kTrialLimit + 1, false);
        std::vector<unsigned> out;
        for (unsigned i = 2; i <= kTrialLimit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (unsigned long j = static_cast<unsigned long>(i) * i; j <= kTrialLimit; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

bool probable_prime(const Integer& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

// One nontrivial factor of composite n, or 0 on failure.
Integer brent(const Integer& n, std::uint64_t budget) {
    for (unsigned long c = 1; c < 20; ++c) {
        Integer y = 2, x, q = 1, g = 1, ys;
        const std::uint64_t m = 128;
        std::uint64_t r = 1, used = 0;
        auto step = [&](const Integer& v) {
            Integer out = v * v + c;
            mpz_mod(out.get_mpz_t(), out.get_mpz_t(), n.get_mpz_t());
            return out;
        };
        while (g == 1 && used < budget) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = step(y);
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                const std::uint64_t lim = std::min(m, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    y = step(y);
                    Integer diff = x - y;
                    q = (q * abs(diff)) % n;
                }
                g = exact::gcd(q, n);
                k += m;
                used += lim;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = step(ys);
                Integer diff = x - ys;
                g = exact::gcd(abs(diff), n);
            } while (g == 1);
        }
        if (g != n && g != 1) return g;
    }
    return 0;
}

void split(const Integer& n, std::uint64_t budget, std::map<Integer, unsigned>& out) {
    if (n == 1) return;
    if (probable_prime(n)) {
        ++out[n];
        return;
    }
    Integer root;
    for (unsigned long k = 2; k <= 3; ++k) {
        if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
            for (unsigned long i = 0; i < k; ++i) split(root, budget, out);
            return;
        }
    }
    const Integer g = brent(n, budget);
    if (g == 0) throw FactorizationError("could not factor " + n.get_str() + "; try a different specialization");
    split(g, budget, out);
    split(n / g, budget, out);
}

}  // namespace

unsigned valuation(const Integer& n, const Integer& p) {
    if (n == 0) throw std::domain_error("valuation of zero");
    Integer m = abs(n);
    unsigned v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        m /= p;
        ++v;
    }
    return v;
}

std::map<Integer, unsigned> factor_integer(const Integer& n_in, std::uint64_t rho_iterations) {
    if (n_in == 0) throw std::domain_error("cannot factor zero");
    Integer n = abs(n_in);
    std::map<Integer, unsigned> out;
    for (unsigned p : small_primes()) {
        if (static_cast<Integer>(p) * p > n) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            n /= p;
            ++out[Integer(p)];
        }
    }
    if (n != 1) split(n, rho_iterations, out);
    return out;
}

}  // namespace twistrank::elliptic
