#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "padh/derham.hpp"

using namespace padh;

namespace {

LaurentFunction random_function(std::mt19937_64& rng, long t, bool allow_negative) {
    LaurentFunction g;
    long nterms = 1 + static_cast<long>(rng() % 6);
    for (long k = 0; k < nterms; ++k) {
        std::vector<long> m(static_cast<size_t>(t));
        for (long j = 0; j < t; ++j) {
            long e = static_cast<long>(rng() % 7) - (allow_negative ? 3 : 0);
            m[static_cast<size_t>(j)] = e;
        }
        long num = static_cast<long>(rng() % 21) - 10;
        long den = 1 + static_cast<long>(rng() % 9);
        mpq_class c(num, den);
        c.canonicalize();
        if (num != 0) g[m] += c;
    }
    for (auto it = g.begin(); it != g.end();)
        it = it->second == 0 ? g.erase(it) : std::next(it);
    return g;
}

LaurentForm log_combination(const std::vector<mpq_class>& cs) {
    LaurentForm w;
    w.t = static_cast<long>(cs.size());
    for (long n = 0; n < w.t; ++n) {
        std::vector<long> m(static_cast<size_t>(w.t), 0);
        m[static_cast<size_t>(n)] = -1;
        w.add_term(m, n, cs[static_cast<size_t>(n)]);
    }
    return w;
}

LaurentForm add_forms(const LaurentForm& a, const LaurentForm& b) {
    LaurentForm r = a;
    for (const auto& [key, c] : b.terms) r.add_term(key.first, key.second, c);
    return r;
}

} // namespace

TEST_CASE("closedness detection") {
    LaurentForm inv;
    inv.t = 2;
    inv.add_term({-1, 0}, 0, 1); // dz1/z1
    CHECK(is_closed(inv));

    LaurentForm bad;
    bad.t = 2;
    bad.add_term({0, 1}, 0, 1); // z2 dz1
    CHECK(!is_closed(bad));

    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        long t = 1 + static_cast<long>(rng() % 3);
        CHECK(is_closed(d_of(random_function(rng, t, true), t)));
    }
}

TEST_CASE("reduction of basic forms") {
    // z^k dz for k != -1: exact with primitive z^{k+1}/(k+1)
    for (long k : {0L, 1L, 3L, -2L}) {
        LaurentForm w;
        w.t = 1;
        w.add_term({k}, 0, 1);
        if (k == -2) {
            CHECK_THROWS_AS(reduce_form(w), NotLogarithmic);
            continue;
        }
        auto r = reduce_form(w);
        CHECK(r.coeffs[0] == 0);
        REQUIRE(r.primitive.size() == 1);
        CHECK(r.primitive.begin()->first[0] == k + 1);
        CHECK(r.primitive.begin()->second == mpq_class(1, k + 1));
    }

    LaurentForm logw;
    logw.t = 1;
    logw.add_term({-1}, 0, 1);
    auto rl = reduce_form(logw);
    CHECK(rl.coeffs[0] == 1);
    CHECK(rl.primitive.empty());

    // (3z^2 + 2/z) dz -> coeffs (2), primitive z^3
    LaurentForm mix;
    mix.t = 1;
    mix.add_term({2}, 0, 3);
    mix.add_term({-1}, 0, 2);
    auto rm = reduce_form(mix);
    CHECK(rm.coeffs[0] == 2);
    REQUIRE(rm.primitive.size() == 1);
    CHECK(rm.primitive.begin()->first[0] == 3);
    CHECK(rm.primitive.begin()->second == 1);
}

TEST_CASE("reduction identity is exact and basis forms give unit vectors") {
    std::mt19937_64 rng(17);
    for (long t = 1; t <= 3; ++t) {
        for (long n = 0; n < t; ++n) {
            std::vector<mpq_class> cs(static_cast<size_t>(t), mpq_class(0));
            cs[static_cast<size_t>(n)] = 1;
            auto r = reduce_form(log_combination(cs));
            for (long j = 0; j < t; ++j)
                CHECK(r.coeffs[static_cast<size_t>(j)] == (j == n ? 1 : 0));
            CHECK(r.primitive.empty());
        }
        CHECK(h1_dim(t) == t);
    }
}

TEST_CASE("random closed log forms reduce exactly") {
    std::mt19937_64 rng(23);
    long count = 0;
    while (count < 1000) {
        long t = 1 + static_cast<long>(rng() % 3);
        std::vector<mpq_class> cs(static_cast<size_t>(t));
        for (long j = 0; j < t; ++j)
        {
            mpq_class c(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4));
            c.canonicalize();
            cs[static_cast<size_t>(j)] = c;
        }
        auto g = random_function(rng, t, false); // polynomial part: keeps log poles simple
        auto omega = add_forms(log_combination(cs), d_of(g, t));
        REQUIRE(is_closed(omega));
        auto r = reduce_form(omega);
        for (long j = 0; j < t; ++j) CHECK(r.coeffs[static_cast<size_t>(j)] == cs[static_cast<size_t>(j)]);
        // the residual omega - sum coeffs dz_n/z_n - d(primitive) must vanish identically
        auto residual = add_forms(omega, add_forms(log_combination([&] {
                                      std::vector<mpq_class> neg = r.coeffs;
                                      for (auto& c : neg) c = -c;
                                      return neg;
                                  }()),
                                                   [&] {
                                                       LaurentFunction ng = r.primitive;
                                                       for (auto& [k, v] : ng) v = -v;
                                                       return d_of(ng, t);
                                                   }()));
        CHECK(residual.terms.empty());
        ++count;
    }
}

TEST_CASE("coefficients invariant under adding exact forms; linearity") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
        long t = 1 + static_cast<long>(rng() % 3);
        std::vector<mpq_class> cs(static_cast<size_t>(t));
        for (long j = 0; j < t; ++j) cs[static_cast<size_t>(j)] = static_cast<long>(rng() % 9) - 4;
        auto base = log_combination(cs);
        auto r0 = reduce_form(base);
        auto pert = add_forms(base, d_of(random_function(rng, t, false), t));
        auto r1 = reduce_form(pert);
        for (long j = 0; j < t; ++j) CHECK(r0.coeffs[static_cast<size_t>(j)] == r1.coeffs[static_cast<size_t>(j)]);
        // exact input reduces to the zero vector
        auto re = reduce_form(d_of(random_function(rng, t, false), t));
        for (long j = 0; j < t; ++j) CHECK(re.coeffs[static_cast<size_t>(j)] == 0);
    }
}

TEST_CASE("term-list parser") {
    auto w = parse_laurent_form({"1 * z1^-1 d z_1"}, 1);
    auto r = reduce_form(w);
    CHECK(r.coeffs[0] == 1);

    auto w2 = parse_laurent_form({"3 * z1^2 d z_1", "2 * z1^-1 d z_1"}, 1);
    auto r2 = reduce_form(w2);
    CHECK(r2.coeffs[0] == 2);

    auto w3 = parse_laurent_form({"1/2 * z1^3 z2^-1 d z_2", "-7 * z2^-1 d z_2"}, 2);
    CHECK(w3.terms.size() == 2);
    CHECK_THROWS_AS(parse_laurent_form({"1 + z1"}, 1), MathError);
}
