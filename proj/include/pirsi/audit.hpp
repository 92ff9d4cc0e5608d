#pragma once

#include <functional>
#include <map>
#include <string>

#include "pirsi/core.hpp"

namespace pirsi::audit {

// Canonical query encoding -> exact probability, for one (W, S).
using QueryDistribution = std::map<std::string, Rational>;

// Scheme hook: enumerate the exact query distribution for a hypothesis.
using QueryEnumerator = std::function<QueryDistribution(int W, const IndexSet& S)>;

struct HypothesisWeight {
    int W = 0;
    IndexSet S;
    Rational p;
};
using Prior = std::vector<HypothesisWeight>;

// The standard uniform prior over valid (W, S).
Prior standard_prior(unsigned K, unsigned M);

// Random positive weights over valid (W, S) with |S| = M, normalized.
Prior random_prior(unsigned K, unsigned M, Rng& rng);

struct PosteriorRow {
    std::string query;
    std::string hypothesis;
    Rational posterior;
    Rational prior;
};

struct AuditReport {
    Rational max_posterior_deviation;
    std::vector<PosteriorRow> rows;
};

// Bayes over queries: is P(W = w | Q) equal to the prior marginal for every
// query and every w? Exact rationals throughout.
AuditReport audit_w(const QueryEnumerator& scheme, unsigned K, unsigned M, const Prior& prior);

// Same with joint hypotheses (w, S).
AuditReport audit_ws(const QueryEnumerator& scheme, unsigned K, unsigned M, const Prior& prior);

// Sampling-based check for instances beyond exact enumeration: draws
// canonicalized transcripts per hypothesis and compares the empirical
// distributions.
struct StatReport {
    double max_total_variation = 0.0;
    double chi_square_p = 1.0;
    size_t categories = 0;
    bool low_sample_warning = false;
};

using TranscriptSampler = std::function<std::string(size_t hypothesis, Rng& rng)>;

StatReport audit_statistical(const TranscriptSampler& sampler, size_t hypotheses, size_t samples,
                             Rng& rng);

}  // namespace pirsi::audit
