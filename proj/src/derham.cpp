#include "padh/derham.hpp"

#include <sstream>

namespace padh {

void LaurentForm::add_term(const std::vector<long>& m, long n, const mpq_class& c) {
    if (c == 0) return;
    auto key = std::make_pair(m, n);
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(key, c);
    } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

LaurentForm d_of(const LaurentFunction& g, long t) {
    LaurentForm out;
    out.t = t;
    for (const auto& [m, c] : g) {
        for (long n = 0; n < t; ++n) {
            if (m[static_cast<size_t>(n)] == 0) continue;
            std::vector<long> mm = m;
            --mm[static_cast<size_t>(n)];
            out.add_term(mm, n, c * m[static_cast<size_t>(n)]);
        }
    }
    return out;
}

bool is_closed(const LaurentForm& omega) {
    // coefficient of z^m dz_j ^ dz_n (j < n) in d(omega)
    std::map<std::tuple<std::vector<long>, long, long>, mpq_class> two;
    for (const auto& [key, c] : omega.terms) {
        const auto& [m, n] = key;
        for (long j = 0; j < omega.t; ++j) {
            if (j == n) continue;
            long mj = m[static_cast<size_t>(j)];
            if (mj == 0) continue;
            std::vector<long> mm = m;
            --mm[static_cast<size_t>(j)];
            mpq_class contrib = c * mj;
            if (j < n)
                two[{mm, j, n}] += contrib;
            else
                two[{mm, n, j}] -= contrib;
        }
    }
    for (const auto& [k, v] : two)
        if (v != 0) return false;
    return true;
}

ReduceResult reduce_form(const LaurentForm& omega) {
    if (!is_closed(omega)) throw NotClosed();
    long t = omega.t;
    // log-pole condition: no dz_n term with z_n-exponent below -1
    for (const auto& [key, c] : omega.terms) {
        const auto& [m, n] = key;
        if (m[static_cast<size_t>(n)] <= -2) throw NotLogarithmic();
    }
    // group by the class u = m + e_n: the term c z^m dz_n is c z^u dz_n/z_n
    std::map<std::vector<long>, std::vector<mpq_class>> classes;
    for (const auto& [key, c] : omega.terms) {
        const auto& [m, n] = key;
        std::vector<long> u = m;
        ++u[static_cast<size_t>(n)];
        auto& cs = classes[u];
        if (cs.empty()) cs.assign(static_cast<size_t>(t), mpq_class(0));
        cs[static_cast<size_t>(n)] += c;
    }
    ReduceResult out;
    out.coeffs.assign(static_cast<size_t>(t), mpq_class(0));
    for (const auto& [u, cs] : classes) {
        bool zero_class = true;
        long pivot = -1;
        for (long j = 0; j < t; ++j) {
            if (u[static_cast<size_t>(j)] != 0) {
                zero_class = false;
                if (pivot < 0) pivot = j;
            }
        }
        if (zero_class) {
            for (long j = 0; j < t; ++j) out.coeffs[static_cast<size_t>(j)] += cs[static_cast<size_t>(j)];
            continue;
        }
        mpq_class gammac = cs[static_cast<size_t>(pivot)] / u[static_cast<size_t>(pivot)];
        // the class is exact iff c_j = gamma * u_j for every j
        for (long j = 0; j < t; ++j)
            if (cs[static_cast<size_t>(j)] != gammac * u[static_cast<size_t>(j)])
                throw NotClosed();
        if (gammac != 0) out.primitive[u] += gammac;
    }
    // drop cancelled primitive monomials
    for (auto it = out.primitive.begin(); it != out.primitive.end();)
        it = it->second == 0 ? out.primitive.erase(it) : std::next(it);
    return out;
}

long h1_dim(long t) { return t; }

LaurentForm parse_laurent_form(const std::vector<std::string>& lines, long t) {
    LaurentForm out;
    out.t = t;
    for (const auto& line : lines) {
        std::istringstream is(line);
        std::string coef_str, tok;
        if (!(is >> coef_str)) continue; // blank line
        is >> tok;
        if (tok != "*") throw MathError("laurent parse: expected '*' in: " + line);
        mpq_class c(coef_str);
        c.canonicalize();
        std::vector<long> m(static_cast<size_t>(t), 0);
        long n = -1;
        while (is >> tok) {
            if (tok == "d") {
                if (!(is >> tok) || tok.size() < 3 || tok[0] != 'z' || tok[1] != '_')
                    throw MathError("laurent parse: expected 'd z_n' in: " + line);
                n = std::stol(tok.substr(2)) - 1;
                break;
            }
            auto caret = tok.find('^');
            if (tok[0] != 'z') throw MathError("laurent parse: bad factor: " + tok);
            long var = std::stol(caret == std::string::npos ? tok.substr(1)
                                                           : tok.substr(1, caret - 1)) - 1;
            long e = caret == std::string::npos ? 1 : std::stol(tok.substr(caret + 1));
            if (var < 0 || var >= t) throw MathError("laurent parse: variable out of range");
            m[static_cast<size_t>(var)] += e;
        }
        if (n < 0 || n >= t) throw MathError("laurent parse: missing differential in: " + line);
        out.add_term(m, n, c);
    }
    return out;
}

} // namespace padh
