#include "pirsi/audit.hpp"

#include <algorithm>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>

namespace pirsi::audit {

namespace {

std::vector<IndexSet> all_side_sets(unsigned K, unsigned M, int W) {
    std::vector<IndexSet> out;
    IndexSet others;
    for (int j = 1; j <= static_cast<int>(K); ++j)
        if (j != W) others.push_back(j);
    IndexSet cur;
    auto rec = [&](auto&& self, size_t start) -> void {
        if (cur.size() == M) {
            out.push_back(cur);
            return;
        }
        for (size_t i = start; i + (M - cur.size()) <= others.size(); ++i) {
            cur.push_back(others[i]);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::string hyp_w_label(int w) {
    return "W=" + std::to_string(w);
}

std::string hyp_ws_label(int w, const IndexSet& s) {
    std::ostringstream os;
    os << "W=" << w << ",S={";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) os << ',';
        os << s[i];
    }
    os << '}';
    return os.str();
}

}  // namespace

Prior standard_prior(unsigned K, unsigned M) {
    Prior prior;
    for (int w = 1; w <= static_cast<int>(K); ++w)
        for (auto& s : all_side_sets(K, M, w))
            prior.push_back({w, s, joint_prior(w, s, K, M)});
    return prior;
}

Prior random_prior(unsigned K, unsigned M, Rng& rng) {
    Prior prior;
    BigInt total = 0;
    for (int w = 1; w <= static_cast<int>(K); ++w)
        for (auto& s : all_side_sets(K, M, w)) {
            BigInt weight = static_cast<long long>(rng.below(1000) + 1);
            prior.push_back({w, s, Rational(weight)});
            total += weight;
        }
    for (auto& h : prior) h.p /= Rational(total);
    return prior;
}

namespace {

// Shared Bayes machinery: hypotheses are grouped by label (one label per w
// for audit_w, one per (w,S) for audit_ws).
AuditReport audit_grouped(const QueryEnumerator& scheme, const Prior& prior,
                          const std::function<std::string(const HypothesisWeight&)>& label_of) {
    std::map<std::string, Rational> group_prior;
    std::map<std::string, std::map<std::string, Rational>> joint;  // query -> label -> mass
    std::map<std::string, Rational> marginal;                      // query -> total mass

    for (const auto& hyp : prior) {
        std::string label = label_of(hyp);
        group_prior[label] += hyp.p;
        if (hyp.p == 0) continue;
        QueryDistribution dist = scheme(hyp.W, hyp.S);
        Rational sum = 0;
        for (const auto& [q, p] : dist) {
            joint[q][label] += hyp.p * p;
            marginal[q] += hyp.p * p;
            sum += p;
        }
        if (sum != 1)
            throw std::logic_error("audit: query distribution does not sum to 1");
    }

    AuditReport report;
    report.max_posterior_deviation = 0;
    for (const auto& [q, by_label] : joint) {
        Rational total = marginal[q];
        if (total == 0) continue;
        Rational column_sum = 0;
        for (const auto& [label, gp] : group_prior) {
            Rational mass = 0;
            auto it = by_label.find(label);
            if (it != by_label.end()) mass = it->second;
            Rational posterior = mass / total;
            column_sum += posterior;
            Rational dev = posterior > gp ? posterior - gp : gp - posterior;
            if (dev > report.max_posterior_deviation) report.max_posterior_deviation = dev;
            report.rows.push_back({q, label, posterior, gp});
        }
        if (column_sum != 1) throw std::logic_error("audit: posteriors do not sum to 1");
    }
    return report;
}

}  // namespace

AuditReport audit_w(const QueryEnumerator& scheme, unsigned K, unsigned M, const Prior& prior) {
    (void)K;
    (void)M;
    return audit_grouped(scheme, prior,
                         [](const HypothesisWeight& h) { return hyp_w_label(h.W); });
}

AuditReport audit_ws(const QueryEnumerator& scheme, unsigned K, unsigned M, const Prior& prior) {
    (void)K;
    (void)M;
    return audit_grouped(scheme, prior,
                         [](const HypothesisWeight& h) { return hyp_ws_label(h.W, h.S); });
}

StatReport audit_statistical(const TranscriptSampler& sampler, size_t hypotheses, size_t samples,
                             Rng& rng) {
    StatReport report;
    report.low_sample_warning = samples < 1000;

    std::vector<std::map<std::string, size_t>> counts(hypotheses);
    std::map<std::string, size_t> col_totals;
    for (size_t h = 0; h < hypotheses; ++h)
        for (size_t i = 0; i < samples; ++i) {
            std::string key = sampler(h, rng);
            ++counts[h][key];
            ++col_totals[key];
        }
    report.categories = col_totals.size();

    // Pairwise total variation, maximized over hypothesis pairs.
    for (size_t a = 0; a < hypotheses; ++a)
        for (size_t b = a + 1; b < hypotheses; ++b) {
            double tv = 0.0;
            for (const auto& [key, total] : col_totals) {
                (void)total;
                auto ca = counts[a].count(key) ? counts[a][key] : 0;
                auto cb = counts[b].count(key) ? counts[b][key] : 0;
                tv += std::abs(static_cast<double>(ca) - static_cast<double>(cb));
            }
            tv /= 2.0 * static_cast<double>(samples);
            report.max_total_variation = std::max(report.max_total_variation, tv);
        }

    // Chi-square homogeneity across all hypotheses.
    if (report.categories >= 2 && hypotheses >= 2) {
        double grand = static_cast<double>(hypotheses * samples);
        double chi2 = 0.0;
        for (size_t h = 0; h < hypotheses; ++h)
            for (const auto& [key, col_total] : col_totals) {
                double expected = static_cast<double>(samples) *
                                  static_cast<double>(col_total) / grand;
                double observed = counts[h].count(key)
                                      ? static_cast<double>(counts[h][key])
                                      : 0.0;
                chi2 += (observed - expected) * (observed - expected) / expected;
            }
        double dof = static_cast<double>((hypotheses - 1) * (report.categories - 1));
        boost::math::chi_squared dist(dof);
        report.chi_square_p = boost::math::cdf(boost::math::complement(dist, chi2));
    }
    return report;
}

}  // namespace pirsi::audit
