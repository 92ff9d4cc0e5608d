#include "pirsi/sunjafar.hpp"

#include <algorithm>
#include <sstream>

namespace pirsi::sj {

namespace {

uint64_t ipow(uint64_t base, unsigned exp) {
    uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

std::vector<std::vector<unsigned>> k_subsets(const std::vector<unsigned>& v, unsigned k) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    auto rec = [&](auto&& self, size_t start) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (size_t i = start; i + (k - cur.size()) <= v.size(); ++i) {
            cur.push_back(v[i]);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

bool has_message(const QueryAtom& a, unsigned m) {
    return std::any_of(a.refs.begin(), a.refs.end(),
                       [m](const SymbolRef& r) { return r.message == m; });
}

}  // namespace

SjTranscript build_queries(unsigned N, unsigned g, unsigned theta, Rng& rng, bool deterministic) {
    if (N < 2) throw ParameterError("sun-jafar: N must be >= 2");
    if (g < 1 || theta < 1 || theta > g) throw ParameterError("sun-jafar: bad g or theta");

    SjTranscript tr;
    tr.N = N;
    tr.g = g;
    tr.theta = theta;
    tr.L = ipow(N, g);

    tr.permutations.assign(g, {});
    for (auto& perm : tr.permutations) {
        perm.resize(tr.L);
        for (uint64_t i = 0; i < tr.L; ++i) perm[i] = static_cast<unsigned>(i + 1);
        if (!deterministic) rng.shuffle(perm);
    }
    std::vector<size_t> counters(g, 0);
    auto fresh = [&](unsigned m) -> SymbolRef {
        if (counters[m - 1] >= tr.permutations[m - 1].size())
            throw std::logic_error("sun-jafar: slot counter overflow");
        return SymbolRef{m, tr.permutations[m - 1][counters[m - 1]++]};
    };

    unsigned next_id = 0;
    // rounds[k-1][server] holds the atoms created in round k.
    std::vector<std::vector<std::vector<QueryAtom>>> rounds(
        g, std::vector<std::vector<QueryAtom>>(N));

    for (unsigned n = 0; n < N; ++n)
        for (unsigned m = 1; m <= g; ++m)
            rounds[0][n].push_back(QueryAtom{next_id++, {fresh(m)}});

    std::vector<unsigned> non_theta;
    for (unsigned m = 1; m <= g; ++m)
        if (m != theta) non_theta.push_back(m);

    for (unsigned k = 2; k <= g; ++k) {
        for (unsigned n = 0; n < N; ++n) {
            // Exploitation: extend every theta-free (k-1)-atom seen at the
            // other servers with a fresh theta bit.
            for (unsigned other = 0; other < N; ++other) {
                if (other == n) continue;
                for (const QueryAtom& src : rounds[k - 2][other]) {
                    if (has_message(src, theta)) continue;
                    QueryAtom atom{next_id++, src.refs};
                    atom.refs.push_back(fresh(theta));
                    std::sort(atom.refs.begin(), atom.refs.end(),
                              [](const SymbolRef& a, const SymbolRef& b) {
                                  return a.message < b.message;
                              });
                    tr.exploit_map[atom.id] = src.id;
                    rounds[k - 1][n].push_back(std::move(atom));
                }
            }
            // Symmetry: (N-1)^(k-1) fresh atoms per theta-free k-subset.
            uint64_t reps = ipow(N - 1, k - 1);
            for (const auto& subset : k_subsets(non_theta, k)) {
                for (uint64_t rep = 0; rep < reps; ++rep) {
                    QueryAtom atom{next_id++, {}};
                    for (unsigned m : subset) atom.refs.push_back(fresh(m));
                    rounds[k - 1][n].push_back(std::move(atom));
                }
            }
        }
    }

    tr.per_server_atoms.assign(N, {});
    for (unsigned n = 0; n < N; ++n) {
        for (unsigned k = 0; k < g; ++k)
            for (auto& atom : rounds[k][n]) tr.per_server_atoms[n].push_back(std::move(atom));
        if (!deterministic) rng.shuffle(tr.per_server_atoms[n]);
    }
    return tr;
}

std::vector<uint8_t> server_answer(const std::vector<BitVec>& supermessages,
                                   const std::vector<QueryAtom>& atoms) {
    std::vector<uint8_t> out;
    out.reserve(atoms.size());
    for (const QueryAtom& atom : atoms) {
        uint8_t bit = 0;
        for (const SymbolRef& r : atom.refs) {
            if (r.message < 1 || r.message > supermessages.size())
                throw ProtocolError("sun-jafar: message index out of range");
            const BitVec& msg = supermessages[r.message - 1];
            if (r.slot < 1 || r.slot > msg.size() * 8)
                throw ProtocolError("sun-jafar: slot out of range");
            bit ^= bitvec_get(msg, r.slot) ? 1 : 0;
        }
        out.push_back(bit);
    }
    return out;
}

BitVec decode(const SjTranscript& tr, const std::vector<std::vector<uint8_t>>& answers) {
    if (answers.size() != tr.N) throw DecodeError("sun-jafar: answer count != N");
    std::map<unsigned, uint8_t> value_by_id;
    for (unsigned n = 0; n < tr.N; ++n) {
        if (answers[n].size() != tr.per_server_atoms[n].size())
            throw DecodeError("sun-jafar: answer/atom count mismatch");
        for (size_t i = 0; i < answers[n].size(); ++i)
            value_by_id[tr.per_server_atoms[n][i].id] = answers[n][i] & 1;
    }

    BitVec out(bitvec_bytes(static_cast<unsigned>(tr.L)), 0);
    uint64_t recovered = 0;
    for (unsigned n = 0; n < tr.N; ++n) {
        for (const QueryAtom& atom : tr.per_server_atoms[n]) {
            const SymbolRef* tref = nullptr;
            for (const SymbolRef& r : atom.refs)
                if (r.message == tr.theta) tref = &r;
            if (!tref) continue;
            uint8_t value = value_by_id.at(atom.id);
            if (atom.refs.size() > 1) {
                auto it = tr.exploit_map.find(atom.id);
                if (it == tr.exploit_map.end())
                    throw DecodeError("sun-jafar: mixed atom without exploit target");
                auto vt = value_by_id.find(it->second);
                if (vt == value_by_id.end())
                    throw DecodeError("sun-jafar: exploit target not answered");
                value ^= vt->second;
            }
            bitvec_set(out, tref->slot, value);
            ++recovered;
        }
    }
    if (recovered != tr.L) throw DecodeError("sun-jafar: recovered symbol count != L");
    return out;
}

DownloadCost download_cost(unsigned N, unsigned g) {
    if (N < 2) throw ParameterError("sun-jafar: N must be >= 2");
    DownloadCost c;
    uint64_t L = ipow(N, g);
    c.total_symbols = N * (L - 1) / (N - 1);
    c.rate = Rational(L) / Rational(c.total_symbols);
    return c;
}

std::string canonical_server_shape(const std::vector<QueryAtom>& atoms) {
    std::map<std::pair<unsigned, unsigned>, unsigned> rank;  // (message, slot) -> rank
    std::map<unsigned, unsigned> next_rank;
    std::ostringstream os;
    for (const QueryAtom& atom : atoms) {
        os << '[';
        bool first = true;
        for (const SymbolRef& r : atom.refs) {
            auto key = std::make_pair(r.message, r.slot);
            auto it = rank.find(key);
            if (it == rank.end()) it = rank.emplace(key, ++next_rank[r.message]).first;
            if (!first) os << '+';
            first = false;
            os << r.message << '.' << it->second;
        }
        os << ']';
    }
    return os.str();
}

}  // namespace pirsi::sj
