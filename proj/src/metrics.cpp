#include "artclust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace artclust {

namespace {

void require_comparable(const Clustering& a, const Clustering& b) {
    if (a.labels.size() != b.labels.size())
        throw DimensionError("clusterings have different lengths: " +
                             std::to_string(a.labels.size()) + " vs " +
                             std::to_string(b.labels.size()));
    if (a.labels.size() < 2)
        throw DimensionError("need at least two samples to compare clusterings");
}

double choose2(double n) { return n * (n - 1.0) / 2.0; }

}  // namespace

int Clustering::n_clusters() const {
    std::unordered_map<int, int> seen;
    for (int v : labels) seen.emplace(v, 0);
    return static_cast<int>(seen.size());
}

Clustering Clustering::from_labels(std::vector<int> labels) {
    return Clustering{std::move(labels)};
}

Clustering Clustering::from_sizes(std::span<const std::size_t> category_ids) {
    Clustering c;
    c.labels.reserve(category_ids.size());
    for (std::size_t v : category_ids) c.labels.push_back(static_cast<int>(v));
    return c;
}

Clustering Clustering::from_strings(std::span<const std::string> labels) {
    Clustering c;
    std::unordered_map<std::string, int> remap;
    c.labels.reserve(labels.size());
    for (const std::string& s : labels) {
        auto [it, inserted] = remap.emplace(s, static_cast<int>(remap.size()));
        c.labels.push_back(it->second);
    }
    return c;
}

std::vector<int> Clustering::canonical() const {
    std::unordered_map<int, int> remap;
    std::vector<int> out;
    out.reserve(labels.size());
    for (int v : labels) {
        auto [it, inserted] = remap.emplace(v, static_cast<int>(remap.size()));
        out.push_back(it->second);
    }
    return out;
}

bool same_partition(const Clustering& a, const Clustering& b) {
    return a.labels.size() == b.labels.size() && a.canonical() == b.canonical();
}

ContingencyTable ContingencyTable::from(const Clustering& a, const Clustering& b) {
    require_comparable(a, b);
    const std::vector<int> ca = a.canonical();
    const std::vector<int> cb = b.canonical();
    const int ra = *std::max_element(ca.begin(), ca.end()) + 1;
    const int rb = *std::max_element(cb.begin(), cb.end()) + 1;

    ContingencyTable table;
    table.counts.assign(static_cast<std::size_t>(ra),
                        std::vector<std::int64_t>(static_cast<std::size_t>(rb), 0));
    table.row_sums.assign(static_cast<std::size_t>(ra), 0);
    table.col_sums.assign(static_cast<std::size_t>(rb), 0);
    table.total = static_cast<std::int64_t>(ca.size());
    for (std::size_t i = 0; i < ca.size(); ++i) {
        ++table.counts[static_cast<std::size_t>(ca[i])][static_cast<std::size_t>(cb[i])];
        ++table.row_sums[static_cast<std::size_t>(ca[i])];
        ++table.col_sums[static_cast<std::size_t>(cb[i])];
    }
    return table;
}

double adjusted_rand_index(const Clustering& a, const Clustering& b) {
    const ContingencyTable t = ContingencyTable::from(a, b);

    double sum_cells = 0.0;
    for (const auto& row : t.counts)
        for (std::int64_t c : row) sum_cells += choose2(static_cast<double>(c));
    double sum_rows = 0.0, sum_cols = 0.0;
    for (std::int64_t c : t.row_sums) sum_rows += choose2(static_cast<double>(c));
    for (std::int64_t c : t.col_sums) sum_cols += choose2(static_cast<double>(c));
    const double all_pairs = choose2(static_cast<double>(t.total));

    const double expected = sum_rows * sum_cols / all_pairs;
    const double maximum = 0.5 * (sum_rows + sum_cols);
    const double denom = maximum - expected;
    if (denom == 0.0) return same_partition(a, b) ? 1.0 : 0.0;
    return (sum_cells - expected) / denom;
}

double adjusted_mutual_information(const Clustering& a, const Clustering& b) {
    const ContingencyTable t = ContingencyTable::from(a, b);
    const double n = static_cast<double>(t.total);

    double mi = 0.0;
    for (std::size_t i = 0; i < t.counts.size(); ++i) {
        for (std::size_t j = 0; j < t.counts[i].size(); ++j) {
            const double nij = static_cast<double>(t.counts[i][j]);
            if (nij <= 0.0) continue;
            mi += nij / n *
                  std::log(n * nij / (static_cast<double>(t.row_sums[i]) *
                                      static_cast<double>(t.col_sums[j])));
        }
    }

    double ha = 0.0, hb = 0.0;
    for (std::int64_t c : t.row_sums)
        ha -= static_cast<double>(c) / n * std::log(static_cast<double>(c) / n);
    for (std::int64_t c : t.col_sums)
        hb -= static_cast<double>(c) / n * std::log(static_cast<double>(c) / n);

    // log-factorial table; the expected-MI terms are hypergeometric
    // probabilities evaluated in log space to stay finite for large n
    std::vector<double> lnfact(static_cast<std::size_t>(t.total) + 1, 0.0);
    for (std::size_t k = 2; k < lnfact.size(); ++k)
        lnfact[k] = lnfact[k - 1] + std::log(static_cast<double>(k));

    double emi = 0.0;
    for (std::size_t i = 0; i < t.row_sums.size(); ++i) {
        const std::int64_t ai = t.row_sums[i];
        for (std::size_t j = 0; j < t.col_sums.size(); ++j) {
            const std::int64_t bj = t.col_sums[j];
            const std::int64_t lo = std::max<std::int64_t>(1, ai + bj - t.total);
            const std::int64_t hi = std::min(ai, bj);
            for (std::int64_t nij = lo; nij <= hi; ++nij) {
                const double log_weight =
                    lnfact[static_cast<std::size_t>(ai)] +
                    lnfact[static_cast<std::size_t>(bj)] +
                    lnfact[static_cast<std::size_t>(t.total - ai)] +
                    lnfact[static_cast<std::size_t>(t.total - bj)] -
                    lnfact[static_cast<std::size_t>(t.total)] -
                    lnfact[static_cast<std::size_t>(nij)] -
                    lnfact[static_cast<std::size_t>(ai - nij)] -
                    lnfact[static_cast<std::size_t>(bj - nij)] -
                    lnfact[static_cast<std::size_t>(t.total - ai - bj + nij)];
                emi += static_cast<double>(nij) / n *
                       std::log(n * static_cast<double>(nij) /
                                (static_cast<double>(ai) * static_cast<double>(bj))) *
                       std::exp(log_weight);
            }
        }
    }

    const double denom = 0.5 * (ha + hb) - emi;
    if (denom == 0.0) return same_partition(a, b) ? 1.0 : 0.0;
    return (mi - emi) / denom;
}

}  // namespace artclust
