#pragma once

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "datum.hpp"

namespace premod {

using Json = nlohmann::ordered_json;

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// cyclotomic encoding: {"conductor": N, "coeffs": [[exponent, "p/q"], ...]}
inline Json cyclotomic_to_json(const Cyclotomic& x) {
    Json coeffs = Json::array();
    for (auto& [e, q] : x.terms()) coeffs.push_back(Json::array({e, q.get_str()}));
    return Json{{"conductor", x.conductor()}, {"coeffs", std::move(coeffs)}};
}

inline Cyclotomic cyclotomic_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("conductor") || !j.contains("coeffs"))
        throw IoError("cyclotomic value needs conductor and coeffs");
    long n = j.at("conductor").get<long>();
    std::vector<std::pair<long, Rat>> terms;
    for (auto& t : j.at("coeffs")) {
        if (!t.is_array() || t.size() != 2) throw IoError("coeff entry must be [exponent, rational]");
        Rat q(t.at(1).get<std::string>());
        q.canonicalize();
        terms.emplace_back(t.at(0).get<long>(), q);
    }
    return Cyclotomic::from_terms(n, terms);
}

inline Json ring_to_json(const FusionRing& r) {
    Json tensor = Json::array();
    for (long a = 0; a < r.rank; ++a) {
        Json plane = Json::array();
        for (long b = 0; b < r.rank; ++b) {
            Json row = Json::array();
            for (long c = 0; c < r.rank; ++c) row.push_back(r.N(a, b, c));
            plane.push_back(std::move(row));
        }
        tensor.push_back(std::move(plane));
    }
    return Json{{"rank", r.rank}, {"duality", r.duality}, {"N", std::move(tensor)}};
}

inline FusionRing ring_from_json(const Json& j) {
    long rank = j.at("rank").get<long>();
    if (rank < 1) throw IoError("rank must be positive");
    FusionRing r = FusionRing::empty(rank, j.at("duality").get<std::vector<long>>());
    const Json& n = j.at("N");
    if ((long)n.size() != rank) throw IoError("N tensor shape mismatch");
    for (long a = 0; a < rank; ++a) {
        if ((long)n[a].size() != rank) throw IoError("N tensor shape mismatch");
        for (long b = 0; b < rank; ++b) {
            if ((long)n[a][b].size() != rank) throw IoError("N tensor shape mismatch");
            for (long c = 0; c < rank; ++c) r.N(a, b, c) = n[a][b][c].get<long>();
        }
    }
    return r;
}

// datum file format premodular-datum/1; smatrix mandatory and canonical on output
inline Json datum_to_json(const PremodularDatum& d) {
    Json twists = Json::array();
    for (auto& t : d.twists) twists.push_back(Json{{"order", t.order}, {"exp", t.exp}});
    Json dims = Json::array();
    for (auto& x : d.dims) dims.push_back(cyclotomic_to_json(x));
    Json smat = Json::array();
    for (auto& row : d.smatrix) {
        Json r = Json::array();
        for (auto& x : row) r.push_back(cyclotomic_to_json(x));
        smat.push_back(std::move(r));
    }
    return Json{{"format", "premodular-datum/1"},
                {"ring", ring_to_json(d.ring)},
                {"dims", std::move(dims)},
                {"twists", std::move(twists)},
                {"smatrix", std::move(smat)}};
}

// Reads a datum; S-matrix recomputed via balancing when absent, cross-checked
// entrywise when present.
inline PremodularDatum datum_from_json(const Json& j) {
    if (!j.contains("format") || j.at("format") != "premodular-datum/1")
        throw IoError("expected format premodular-datum/1");
    FusionRing ring = ring_from_json(j.at("ring"));
    std::vector<RootOfUnity> twists;
    for (auto& t : j.at("twists"))
        twists.push_back(RootOfUnity::make(t.at("order").get<long>(), t.at("exp").get<long>()));
    std::vector<Cyclotomic> dims;
    for (auto& x : j.at("dims")) dims.push_back(cyclotomic_from_json(x));
    PremodularDatum d;
    try {
        d = s_from_balancing(ring, twists, dims);
    } catch (const DatumError& e) {
        throw IoError(std::string("integrity error: ") + e.what());
    }
    if (j.contains("smatrix")) {
        const Json& sm = j.at("smatrix");
        if ((long)sm.size() != ring.rank) throw IoError("smatrix shape mismatch");
        for (long a = 0; a < ring.rank; ++a)
            for (long b = 0; b < ring.rank; ++b)
                if (cyclotomic_from_json(sm[a][b]) != d.smatrix[a][b])
                    throw IoError("integrity error: smatrix entry (" + std::to_string(a) + "," +
                                  std::to_string(b) + ") disagrees with balancing");
    }
    return d;
}

inline std::string datum_to_string(const PremodularDatum& d) {
    return datum_to_json(d).dump(2) + "\n";
}

inline PremodularDatum datum_from_string(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError(std::string("parse error: ") + e.what());  // carries byte position
    }
    return datum_from_json(j);
}

inline PremodularDatum read_datum_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return datum_from_string(ss.str());
}

// atomic write: temp file in place, then rename
inline void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw IoError("cannot rename to " + path);
}

inline void write_datum_file(const std::string& path, const PremodularDatum& d) {
    write_file_atomic(path, datum_to_string(d));
}

}  // namespace premod
