#include "lfroe/bigint.hpp"

#include <algorithm>
#include <limits>

#include "lfroe/errors.hpp"

namespace lfroe {

namespace {

bool all_digits(std::string_view text)
{
    return !text.empty() &&
           std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; });
}

big_int pollard_brent(const big_int& n)
{
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        big_int x = 2, y = 2, g = 1, q = 1, ys;
        auto step = [&](const big_int& v) {
            big_int r = v * v + c;
            return big_int(r % n);
        };
        unsigned long r = 1;
        constexpr unsigned long batch = 64;
        while (g == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = step(y);
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (unsigned long i = 0; i < std::min(batch, r - k); ++i) {
                    y = step(y);
                    big_int diff = abs(x - y);
                    q = (q * diff) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += batch;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = step(ys);
                big_int diff = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split(const big_int& n, std::vector<big_int>& primes)
{
    if (n == 1) return;
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    big_int d = pollard_brent(n);
    split(d, primes);
    split(n / d, primes);
}

} // namespace

big_int parse_big_int(std::string_view text)
{
    std::string_view digits = text;
    if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
    if (!all_digits(digits)) {
        throw malformed_input("not a decimal integer: '" + std::string(text) + "'");
    }
    return big_int(std::string(text), 10);
}

rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return rational(parse_big_int(text));
    big_int num = parse_big_int(text.substr(0, slash));
    big_int den = parse_big_int(text.substr(slash + 1));
    if (den == 0) throw malformed_input("zero denominator in '" + std::string(text) + "'");
    rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const big_int& value) { return value.get_str(10); }

std::string to_string(const rational& value) { return value.get_str(10); }

bool fits_u64(const big_int& value)
{
    if (sgn(value) < 0) return false;
    return mpz_sizeinbase(value.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const big_int& value)
{
    if (!fits_u64(value)) {
        throw depth_exhausted("integer " + to_string(value) + " does not fit in 64 bits");
    }
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, value.get_mpz_t());
    return out;
}

std::uint64_t valuation(const big_int& value, const big_int& prime)
{
    if (value == 0) throw std::invalid_argument("valuation of zero");
    big_int rest = value;
    return mpz_remove(rest.get_mpz_t(), value.get_mpz_t(), prime.get_mpz_t());
}

bool is_prime(const big_int& value)
{
    if (value < 2) return false;
    return mpz_probab_prime_p(value.get_mpz_t(), 40) != 0;
}

std::vector<std::pair<big_int, std::uint64_t>> factorize(const big_int& value)
{
    if (value == 0) throw std::invalid_argument("factorize of zero");
    big_int n = abs(value);
    std::vector<big_int> primes;
    for (unsigned long p = 2; p < 10000 && n > 1; p += (p == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            primes.emplace_back(p);
            n /= p;
        }
    }
    split(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<big_int, std::uint64_t>> out;
    for (const auto& p : primes) {
        if (!out.empty() && out.back().first == p) {
            ++out.back().second;
        } else {
            out.emplace_back(p, 1);
        }
    }
    return out;
}

} // namespace lfroe
