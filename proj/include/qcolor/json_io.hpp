#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "qcolor/box.hpp"
#include "qcolor/congruence.hpp"
#include "qcolor/qpolynomial.hpp"
#include "qcolor/series.hpp"

namespace qcolor {

// nlohmann objects are backed by std::map, so keys serialize sorted; together
// with the all-integer payloads this keeps every report byte-reproducible.
using json = nlohmann::json;

inline std::string decimal(const mpz_class& v) { return v.get_str(); }
inline std::string decimal(std::uint64_t v) { return std::to_string(v); }

/// {modulus: m|null, order: Q, coeffs: [decimal strings]}
template <typename Ring>
json series_to_json(const TruncatedSeries<Ring>& s) {
    json coeffs = json::array();
    for (const auto& c : s.coefficients()) coeffs.push_back(decimal(c));
    json j;
    if constexpr (Ring::modular) {
        j["modulus"] = s.ring().modulus();
    } else {
        j["modulus"] = nullptr;
    }
    j["order"] = s.order();
    j["coeffs"] = std::move(coeffs);
    return j;
}

inline json polynomial_to_json(const QPolynomial& p) {
    json coeffs = json::array();
    for (const auto& c : p.coefficients()) coeffs.push_back(decimal(c));
    return json{{"degree", p.degree()}, {"coeffs", std::move(coeffs)}};
}

inline json progression_to_json(const ProgressionSpec& s) {
    return json{{"residue", s.start},
                {"step", s.step},
                {"modulus", s.modulus},
                {"max_index", s.max_index}};
}

/// {spec, holds, witnesses: [[index, value]], checked_count}
inline json congruence_report_to_json(const CongruenceReport& r) {
    json witnesses = json::array();
    for (const auto& w : r.witnesses) witnesses.push_back(json::array({w.index, w.value}));
    return json{{"spec", progression_to_json(r.spec)},
                {"holds", r.holds},
                {"witnesses", std::move(witnesses)},
                {"checked_count", r.checked_count}};
}

inline json witness_search_to_json(const WitnessSearchReport& r) {
    json scans = json::array();
    for (const auto& s : r.scans) {
        json entry{{"ell", s.ell}, {"step", s.step}, {"checked_count", s.checked_count}};
        entry["witness"] =
            s.witness ? json::array({s.witness->index, s.witness->value}) : json(nullptr);
        scans.push_back(std::move(entry));
    }
    return json{{"j", r.j},
                {"ell_max", r.ell_max},
                {"coeff_bound", r.coeff_bound},
                {"scans", std::move(scans)}};
}

/// {box: {M, N}, k, n, specialized, shape: [...], data: row-major integers}
inline json array_to_json(const ColorCoefficientArray& a) {
    json data = json::array();
    for (const auto& v : a.data()) {
        if (!v.fits_slong_p()) {
            throw std::overflow_error("array entry exceeds the JSON integer range");
        }
        data.push_back(v.get_si());
    }
    json shape = json::array();
    for (std::size_t i = 0; i < a.dims(); ++i) shape.push_back(a.side());
    json j{{"box", json{{"M", a.box().max_part}, {"N", a.box().max_parts}}},
           {"k", a.colors()},
           {"n", a.weight()},
           {"shape", std::move(shape)},
           {"data", std::move(data)}};
    j["specialized"] = a.specialized() ? json(*a.specialized()) : json(nullptr);
    return j;
}

inline json cut_to_json(const std::vector<long>& start, const std::vector<long>& direction,
                        const std::vector<mpz_class>& sequence) {
    json seq = json::array();
    for (const auto& v : sequence) seq.push_back(decimal(v));
    return json{{"start", start}, {"direction", direction}, {"sequence", std::move(seq)}};
}

inline json unimodality_report_to_json(const UnimodalityReport& r) {
    json violations = json::array();
    for (const auto& v : r.violations) violations.push_back(cut_to_json(v.start, v.direction, v.sequence));
    return json{{"box", json{{"M", r.box.max_part}, {"N", r.box.max_parts}}},
                {"k", r.colors},
                {"n", r.weight},
                {"direction_bound", r.direction_bound},
                {"cuts_checked", r.cuts_checked},
                {"violations", std::move(violations)}};
}

inline json c2pp_mismatches_to_json(const std::vector<C2ppMismatch>& ms) {
    json out = json::array();
    for (const auto& m : ms) {
        out.push_back(json{{"n", m.n},
                           {"series_side", m.series_side},
                           {"partition_side", m.partition_side}});
    }
    return out;
}

}  // namespace qcolor
