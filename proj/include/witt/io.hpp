#pragma once
// Text syntax for fields, characters and Brauer classes, plus JSON encoders.
//
//   field spec:      Q | mu:n=<n>;H=[g1,g2,...] | sqrt:<D>
//   character spec:  chi:n=<n>;d=<d>;img=[e1,...] | sqrt:<D> | <cyclic field spec>
//   class spec:      q1:a/b,q2:c/d,...   (place "inf" allowed, invariant 1/2)
//
// A field spec used where a character is expected denotes the canonical
// character of that cyclic field (the one sending the canonical generator of
// its Galois group to 1/d).

#include <json.hpp>
#include <sstream>

#include "density.hpp"
#include "heights.hpp"
#include "metacyclic.hpp"

namespace witt {

using json = nlohmann::ordered_json;

namespace detail {

inline std::vector<i64> parse_int_list(const std::string& s) {
    require(s.size() >= 2 && s.front() == '[' && s.back() == ']', "expected a bracketed list: " + s);
    std::vector<i64> out;
    std::string body = s.substr(1, s.size() - 2);
    if (body.empty()) return out;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
    return out;
}

inline std::map<std::string, std::string> parse_kv(const std::string& s) {
    std::map<std::string, std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ';')) {
        auto eq = part.find('=');
        require(eq != std::string::npos, "expected key=value in spec: " + part);
        out[part.substr(0, eq)] = part.substr(eq + 1);
    }
    return out;
}

}  // namespace detail

inline AbelianField parse_field(const std::string& spec) {
    if (spec == "Q" || spec == "q" || spec == "1") return AbelianField::rationals();
    if (spec.rfind("mu:", 0) == 0) {
        auto kv = detail::parse_kv(spec.substr(3));
        require(kv.count("n"), "mu spec needs n=<modulus>");
        i64 n = std::stoll(kv["n"]);
        std::vector<i64> H = kv.count("H") ? detail::parse_int_list(kv["H"]) : std::vector<i64>{};
        return AbelianField(n, H);
    }
    if (spec.rfind("sqrt:", 0) == 0) return quadratic_field(std::stoll(spec.substr(5)));
    throw std::invalid_argument("unrecognized field spec: " + spec);
}

inline DirichletCharacter parse_character(const std::string& spec) {
    if (spec.rfind("chi:", 0) == 0) {
        auto kv = detail::parse_kv(spec.substr(4));
        require(kv.count("n") && kv.count("d") && kv.count("img"), "chi spec needs n=, d=, img=[...]");
        return DirichletCharacter(std::stoll(kv["n"]), std::stoll(kv["d"]), detail::parse_int_list(kv["img"]));
    }
    return character_of_field(parse_field(spec));  // sqrt:D / mu:... as a cyclic field
}

inline BrauerClass parse_class(const std::string& spec) {
    std::map<Place, Frac> entries;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto colon = part.find(':');
        require(colon != std::string::npos, "class entry must be place:num/den, got: " + part);
        std::string place = part.substr(0, colon);
        std::string frac = part.substr(colon + 1);
        auto slash = frac.find('/');
        require(slash != std::string::npos, "invariant must be num/den, got: " + frac);
        Frac f = Frac::of(std::stoll(frac.substr(0, slash)), std::stoll(frac.substr(slash + 1)));
        Place pl = (place == "inf" || place == "oo") ? Place::archimedean() : Place::at(std::stoll(place));
        entries[pl] = entries.count(pl) ? entries[pl] + f : f;
    }
    return BrauerClass(entries);
}

// ---------------------------------------------------------------------------
// canonical text forms (echoed back by the CLI) and JSON

inline std::string field_str(const AbelianField& K) {
    if (K.is_rational()) return "Q";
    std::string s = "mu:n=" + std::to_string(K.conductor()) + ";H=[";
    auto gens = K.subgroup().generator_residues();
    for (size_t i = 0; i < gens.size(); ++i) s += (i ? "," : "") + std::to_string(gens[i]);
    return s + "]";
}

inline std::string character_str(const DirichletCharacter& chi) {
    std::string s = "chi:n=" + std::to_string(chi.modulus()) + ";d=" + std::to_string(chi.order()) + ";img=[";
    for (size_t i = 0; i < chi.images().size(); ++i) s += (i ? "," : "") + std::to_string(chi.images()[i]);
    return s + "]";
}

inline std::string class_str(const BrauerClass& a) {
    std::string s;
    for (auto& [pl, f] : a.invariants()) {
        if (!s.empty()) s += ",";
        s += (pl.infinite ? std::string("inf") : std::to_string(pl.q)) + ":" + f.str();
    }
    return s.empty() ? "0" : s;
}

inline json field_json(const AbelianField& K) {
    json j;
    j["n"] = K.conductor();
    j["H_generators"] = K.subgroup().generator_residues();
    j["degree"] = K.degree();
    return j;
}

inline AbelianField field_from_json(const json& j) {
    return AbelianField(j.at("n").get<i64>(), j.at("H_generators").get<std::vector<i64>>());
}

inline json extint_json(const ExtInt& e) {
    if (e.inf) return json("inf");
    return json(e.v);
}

inline json height_json(const HeightResult& h) {
    json j;
    j["lower"] = extint_json(h.lower);
    j["upper"] = extint_json(h.upper);
    j["exact"] = h.exact;
    json br = json::array();
    for (auto& [pl, v] : h.breakdown) {
        json e;
        e["place"] = pl.infinite ? json("inf") : json(pl.q);
        e["height"] = extint_json(v);
        br.push_back(e);
    }
    j["breakdown"] = br;
    if (h.special_cap)
        j["special_cap"] = *h.special_cap;
    else
        j["special_cap"] = nullptr;
    return j;
}

inline json primeset_json(const PrimeSetSpec& s, i64 limit) {
    json j;
    j["modulus"] = s.modulus;
    j["residues"] = s.residues;
    j["note"] = s.note;
    if (limit >= 2) j["primes"] = enumerate_primes(s, limit);
    return j;
}

inline json local_data_json(const LocalData& ld, const std::optional<TameLocalPresentation>& pres) {
    json j;
    j["place"] = ld.place.infinite ? json("inf") : json(ld.place.q);
    j["e"] = ld.e;
    j["f"] = ld.f;
    j["g"] = ld.g;
    if (!ld.place.infinite) {
        j["frobenius_residue"] = ld.frobenius;
        j["residue_norm"] = ld.residue_norm;
    }
    if (pres) {
        json p;
        p["e"] = pres->e;
        p["f"] = pres->f;
        p["t"] = pres->t;
        p["q"] = pres->q;
        j["presentation"] = p;
    } else {
        j["presentation"] = nullptr;
    }
    return j;
}

inline std::string bool3_str(Bool3 b) {
    return b == Bool3::True ? "yes" : b == Bool3::False ? "no" : "indeterminate";
}

inline json classification_json(const FiberClassification& c) {
    json j;
    j["m"] = c.m;
    j["verdict"] = c.verdict == FiberCase::CaseI ? "CaseI" : c.verdict == FiberCase::CaseII ? "CaseII" : "Indeterminate";
    json rows = json::array();
    for (auto& r : c.rows) {
        json row;
        row["p"] = r.p;
        row["n_p"] = r.n_p;
        row["b_p_lower"] = extint_json(r.bound.lower);
        row["b_p_upper"] = extint_json(r.bound.upper);
        row["b_p_exact"] = r.bound.exact;
        row["exceptional"] = bool3_str(r.bound.exceptional);
        row["exceeds"] = bool3_str(r.exceeds);
        rows.push_back(row);
    }
    j["per_prime"] = rows;
    j["witness_primes"] = c.witness_primes;
    return j;
}

inline json decide_json(const DecideResult& r) {
    json j;
    j["verdict"] = r.verdict == CrossedVerdict::Crossed      ? "Crossed"
                   : r.verdict == CrossedVerdict::Noncrossed ? "Noncrossed"
                                                             : "Undecided";
    j["m"] = r.m;
    j["fiber_index"] = r.fiber_index;
    j["classification"] = classification_json(r.classification);
    j["witness"] = json::object();
    if (r.witness_p) j["witness"]["p"] = *r.witness_p;
    if (r.q0) j["witness"]["q0"] = *r.q0;
    if (r.q1) j["witness"]["q1"] = *r.q1;
    if (r.q2) j["witness"]["q2"] = *r.q2;
    j["detail"] = r.detail;
    return j;
}

inline json density_json(const DensityReport& r) {
    json j;
    j["x"] = r.x;
    j["m"] = r.m;
    j["q0"] = r.q0;
    j["support_size"] = r.support_size;
    j["exact"] = r.exact;
    if (r.exact) {
        j["Y"] = r.Y_exact;
        j["X"] = r.X_exact;
    } else {
        j["Y"] = r.Y;
        j["X"] = r.X;
        j["samples"] = r.samples;
        j["seed"] = r.seed;
        j["ci_low"] = r.ci_low;
        j["ci_high"] = r.ci_high;
    }
    j["d"] = r.d;
    j["lower_bound"] = r.lower_bound;
    j["spec_hits"] = r.spec_hits;
    return j;
}

}  // namespace witt
