// Python bindings for the main operations: databases, field arithmetic,
// capacity formulas, local scheme round trips, and the privacy audits.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pirsi/audit.hpp"
#include "pirsi/bounds.hpp"
#include "pirsi/client.hpp"
#include "pirsi/multiserver.hpp"

namespace py = pybind11;
using namespace pirsi;

namespace {

py::object to_fraction(const Rational& r) {
    std::ostringstream os;
    os << r;
    return py::module_::import("fractions").attr("Fraction")(os.str());
}

py::bytes bitvec_to_bytes(const BitVec& v) {
    return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

BitVec bytes_to_bitvec(const py::bytes& b) {
    std::string s = b;
    return BitVec(s.begin(), s.end());
}

// Full scheme round trip against in-memory loopback servers.
py::dict fetch_local(const std::string& scheme, const Database& db, unsigned N, unsigned M,
                     int W, const IndexSet& S, uint64_t seed) {
    net::PirServer server(db);
    std::vector<std::unique_ptr<net::LoopbackChannel>> owned;
    std::vector<net::Channel*> channels;
    for (unsigned n = 0; n < N; ++n) {
        owned.push_back(std::make_unique<net::LoopbackChannel>(server));
        channels.push_back(owned.back().get());
    }
    client::SessionConfig cfg{client::scheme_from_string(scheme), {N, db.K, M, db.t}, seed};
    std::map<int, BitVec> side;
    for (int j : S) side[j] = db.messages[j - 1];
    auto res = client::fetch(cfg, W, S, side, channels);
    py::dict out;
    out["message"] = bitvec_to_bytes(res.message);
    out["downloaded_bits"] = res.rate.total_answer_bits;
    out["uploaded_bits"] = res.transcript.uploaded_bits;
    out["rate"] = to_fraction(res.rate.rate);
    out["transcript_json"] = res.transcript.to_json();
    return out;
}

py::dict enumerate_partition_queries(unsigned K, int W, const IndexSet& S) {
    py::dict out;
    for (auto& [q, p] : partition::enumerate_queries(DemandSpec{W, S}, K))
        out[py::str(q)] = to_fraction(p);
    return out;
}

audit::QueryEnumerator enumerator_for(const std::string& scheme, unsigned K, unsigned M) {
    if (scheme == "partition")
        return [K](int W, const IndexSet& S) {
            return partition::enumerate_queries(DemandSpec{W, S}, K);
        };
    if (scheme == "mds")
        return [M](int, const IndexSet&) {
            return audit::QueryDistribution{{"M=" + std::to_string(M), Rational(1)}};
        };
    throw ParameterError("exact audit supports partition and mds");
}

py::dict audit_exact(const std::string& scheme, unsigned K, unsigned M) {
    auto prior = audit::standard_prior(K, M);
    auto e = enumerator_for(scheme, K, M);
    py::dict out;
    out["max_deviation_w"] = to_fraction(audit::audit_w(e, K, M, prior).max_posterior_deviation);
    out["max_deviation_ws"] =
        to_fraction(audit::audit_ws(e, K, M, prior).max_posterior_deviation);
    return out;
}

py::dict audit_multiserver_statistical(unsigned K, unsigned M, size_t samples, uint64_t seed) {
    if (K % (M + 1) != 0) throw ParameterError("(M+1) must divide K");
    unsigned g = K / (M + 1);
    if (g < 2) throw ParameterError("need at least two super-messages");
    Rng rng(seed);
    audit::TranscriptSampler sampler = [g](size_t h, Rng& r) {
        auto tr = sj::build_queries(2, g, static_cast<unsigned>(h) + 1, r);
        return sj::canonical_server_shape(tr.per_server_atoms[0]);
    };
    auto rep = audit::audit_statistical(sampler, g, samples, rng);
    py::dict out;
    out["max_total_variation"] = rep.max_total_variation;
    out["chi_square_p"] = rep.chi_square_p;
    out["categories"] = rep.categories;
    out["low_sample_warning"] = rep.low_sample_warning;
    return out;
}

IndexSet mais_greedy_py(const std::vector<IndexSet>& out_neighbors, uint64_t seed,
                        bool lowest_index) {
    bounds::SideInfoGraph g;
    g.K = static_cast<unsigned>(out_neighbors.size());
    g.out_neighbors = out_neighbors;
    for (auto& n : g.out_neighbors) std::sort(n.begin(), n.end());
    Rng rng(seed);
    return bounds::mais_greedy(g, rng, lowest_index);
}

}  // namespace

PYBIND11_MODULE(_pirsi, m) {
    m.doc() = "private retrieval with side information: schemes, audits, bounds";

    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<ProtocolError>(m, "ProtocolError", PyExc_RuntimeError);
    py::register_exception<DecodeError>(m, "DecodeError", PyExc_RuntimeError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);

    py::class_<Database>(m, "Database")
        .def_readonly("K", &Database::K)
        .def_readonly("t", &Database::t)
        .def_property_readonly("messages", [](const Database& db) {
            py::list out;
            for (auto& msg : db.messages) out.append(bitvec_to_bytes(msg));
            return out;
        });

    m.def("random_database", [](unsigned K, unsigned t, uint64_t seed) {
        Rng rng(seed);
        return random_database(K, t, rng);
    }, py::arg("k"), py::arg("t"), py::arg("seed"));
    m.def("save_database", &save_database, py::arg("db"), py::arg("path"));
    m.def("load_database", &load_database, py::arg("path"));

    m.def("gf_mul", [](uint32_t a, uint32_t b, unsigned t) { return gf::FieldSpec(t).mul(a, b); },
          py::arg("a"), py::arg("b"), py::arg("t"));
    m.def("gf_inv", [](uint32_t a, unsigned t) { return gf::FieldSpec(t).inv(a); },
          py::arg("a"), py::arg("t"));

    m.def("capacity_w", [](unsigned K, unsigned M) { return to_fraction(bounds::capacity_w(K, M)); },
          py::arg("k"), py::arg("m"));
    m.def("capacity_ws",
          [](unsigned K, unsigned M) { return to_fraction(bounds::capacity_ws(K, M)); },
          py::arg("k"), py::arg("m"));
    m.def("multiserver_rate_lb",
          [](unsigned N, unsigned K, unsigned M) {
              return to_fraction(bounds::multiserver_rate_lb(N, K, M));
          },
          py::arg("n"), py::arg("k"), py::arg("m"));
    m.def("lemma5_lower_bound", &bounds::lemma5_lower_bound, py::arg("k"), py::arg("m"));
    m.def("joint_prior",
          [](int W, const IndexSet& S, unsigned K, unsigned M) {
              return to_fraction(joint_prior(W, S, K, M));
          },
          py::arg("w"), py::arg("s"), py::arg("k"), py::arg("m"));

    m.def("fetch_local", &fetch_local, py::arg("scheme"), py::arg("db"), py::arg("n"),
          py::arg("m"), py::arg("w"), py::arg("s"), py::arg("seed"),
          "Run one scheme end to end against in-memory loopback servers.");
    m.def("enumerate_partition_queries", &enumerate_partition_queries, py::arg("k"), py::arg("w"),
          py::arg("s"));
    m.def("audit_exact", &audit_exact, py::arg("scheme"), py::arg("k"), py::arg("m"));
    m.def("audit_multiserver_statistical", &audit_multiserver_statistical, py::arg("k"),
          py::arg("m"), py::arg("samples") = 10000, py::arg("seed") = 0);
    m.def("mais_greedy", &mais_greedy_py, py::arg("out_neighbors"), py::arg("seed") = 0,
          py::arg("lowest_index") = false,
          "Greedy acyclic vertex set; out_neighbors is a list of 1-based neighbor lists.");

    m.attr("__version__") = "1.0.0";
}
