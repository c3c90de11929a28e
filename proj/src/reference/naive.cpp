#include "naive.hpp"

#include <cassert>
#include <cmath>
#include <map>
#include <stdexcept>

namespace artclust::ref {

namespace {

std::size_t norm1(const std::vector<std::uint8_t>& v) {
    std::size_t n = 0;
    for (auto b : v) n += b;
    return n;
}

// Uptake coefficient for a template with `norm` set bits. The bottom-up
// weight row is this coefficient on the template's support and zero
// elsewhere, so the bottom-up response to x is coeff * |x AND template|.
double bottom_up_coeff(double learning_param, std::size_t norm) {
    return learning_param / (learning_param - 1.0 + static_cast<double>(norm));
}

// Relabel to dense ids in order of first appearance, so two label vectors
// describe the same partition iff their canonical forms are equal.
std::vector<int> canonical(const std::vector<int>& labels) {
    std::map<int, int> remap;
    std::vector<int> out;
    out.reserve(labels.size());
    for (int v : labels) {
        auto [it, inserted] = remap.emplace(v, static_cast<int>(remap.size()));
        out.push_back(it->second);
    }
    return out;
}

}  // namespace

NaiveArt1Result naive_art1_fit(const std::vector<std::vector<std::uint8_t>>& samples,
                               double vigilance, double learning_param) {
    NaiveArt1Result result;
    auto& templates = result.templates;

    for (const auto& x : samples) {
        const std::size_t nx = norm1(x);
        if (nx == 0) throw std::invalid_argument("naive_art1_fit: all-zero sample");

        const std::size_t n_cat = templates.size();
        std::vector<double> response(n_cat);
        std::vector<std::size_t> overlap(n_cat);
        for (std::size_t j = 0; j < n_cat; ++j) {
            std::size_t ov = 0;
            for (std::size_t i = 0; i < x.size(); ++i)
                ov += static_cast<std::size_t>(x[i] & templates[j][i]);
            overlap[j] = ov;
            response[j] = bottom_up_coeff(learning_param, norm1(templates[j])) *
                          static_cast<double>(ov);
        }

        std::vector<bool> tried(n_cat, false);
        bool assigned = false;
        for (std::size_t round = 0; round < n_cat && !assigned; ++round) {
            // next untried category with the highest response; first (lowest
            // id) wins ties because the comparison is strict
            std::size_t best = n_cat;
            for (std::size_t j = 0; j < n_cat; ++j) {
                if (tried[j]) continue;
                if (best == n_cat || response[j] > response[best]) best = j;
            }
            tried[best] = true;

            const double match = static_cast<double>(overlap[best]) /
                                 static_cast<double>(nx);
            if (match >= vigilance) {
                for (std::size_t i = 0; i < x.size(); ++i)
                    templates[best][i] = static_cast<std::uint8_t>(x[i] & templates[best][i]);
                result.assignments.push_back(best);
                assigned = true;
            }
        }
        if (!assigned) {
            templates.push_back(x);
            result.assignments.push_back(templates.size() - 1);
        }
    }
    return result;
}

double naive_ari(const std::vector<int>& a, const std::vector<int>& b) {
    assert(a.size() == b.size());
    const std::size_t n = a.size();
    long long both_same = 0, a_same_only = 0, b_same_only = 0, both_diff = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool sa = a[i] == a[j];
            const bool sb = b[i] == b[j];
            if (sa && sb)
                ++both_same;
            else if (sa)
                ++a_same_only;
            else if (sb)
                ++b_same_only;
            else
                ++both_diff;
        }
    }
    const double total = static_cast<double>(both_same + a_same_only + b_same_only + both_diff);
    const double pairs_a = static_cast<double>(both_same + a_same_only);
    const double pairs_b = static_cast<double>(both_same + b_same_only);
    const double expected = pairs_a * pairs_b / total;
    const double maximum = 0.5 * (pairs_a + pairs_b);
    const double denom = maximum - expected;
    if (denom == 0.0) return canonical(a) == canonical(b) ? 1.0 : 0.0;
    return (static_cast<double>(both_same) - expected) / denom;
}

double naive_ami(const std::vector<int>& a, const std::vector<int>& b) {
    assert(a.size() == b.size());
    const std::size_t n = a.size();
    if (n > 20) throw std::invalid_argument("naive_ami: exact factorials need n <= 20");

    std::map<int, std::size_t> ira, irb;
    for (int v : a) ira.emplace(v, ira.size());
    for (int v : b) irb.emplace(v, irb.size());
    const std::size_t ra = ira.size(), rb = irb.size();

    std::vector<std::vector<double>> nij(ra, std::vector<double>(rb, 0.0));
    std::vector<double> ai(ra, 0.0), bj(rb, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        nij[ira[a[k]]][irb[b[k]]] += 1.0;
        ai[ira[a[k]]] += 1.0;
        bj[irb[b[k]]] += 1.0;
    }
    const double dn = static_cast<double>(n);

    double mi = 0.0;
    for (std::size_t i = 0; i < ra; ++i)
        for (std::size_t j = 0; j < rb; ++j)
            if (nij[i][j] > 0.0)
                mi += nij[i][j] / dn * std::log(dn * nij[i][j] / (ai[i] * bj[j]));

    double ha = 0.0, hb = 0.0;
    for (double c : ai) ha -= c / dn * std::log(c / dn);
    for (double c : bj) hb -= c / dn * std::log(c / dn);

    std::vector<double> fact(n + 1, 1.0);
    for (std::size_t k = 1; k <= n; ++k) fact[k] = fact[k - 1] * static_cast<double>(k);

    double emi = 0.0;
    for (std::size_t i = 0; i < ra; ++i) {
        for (std::size_t j = 0; j < rb; ++j) {
            const long long cai = static_cast<long long>(ai[i]);
            const long long cbj = static_cast<long long>(bj[j]);
            const long long lo = std::max(1LL, cai + cbj - static_cast<long long>(n));
            const long long hi = std::min(cai, cbj);
            for (long long x = lo; x <= hi; ++x) {
                const double weight =
                    fact[cai] * fact[cbj] * fact[n - cai] * fact[n - cbj] /
                    (fact[n] * fact[x] * fact[cai - x] * fact[cbj - x] *
                     fact[n - cai - cbj + x]);
                emi += static_cast<double>(x) / dn *
                       std::log(dn * static_cast<double>(x) / (ai[i] * bj[j])) * weight;
            }
        }
    }

    const double denom = 0.5 * (ha + hb) - emi;
    if (denom == 0.0) return canonical(a) == canonical(b) ? 1.0 : 0.0;
    return (mi - emi) / denom;
}

}  // namespace artclust::ref
