#pragma once

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcolor/box.hpp"
#include "qcolor/colored.hpp"
#include "qcolor/congruence.hpp"
#include "qcolor/json_io.hpp"
#include "qcolor/parallel.hpp"

namespace qcolor::cli {

inline constexpr const char* kMaxOrderEnvVar = "QCOLOR_MAX_ORDER";
inline constexpr std::size_t kDefaultMaxOrder = 500000;

/// Expansion ceiling for truncation orders and scan bounds, overridable
/// through the QCOLOR_MAX_ORDER environment variable.
inline std::size_t max_order_ceiling() {
    if (const char* v = std::getenv(kMaxOrderEnvVar)) {
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(v, &end, 10);
        if (end == v || *end != '\0' || parsed == 0) {
            throw std::invalid_argument(std::string(kMaxOrderEnvVar) +
                                        " must be a positive integer, got '" + v + "'");
        }
        return static_cast<std::size_t>(parsed);
    }
    return kDefaultMaxOrder;
}

inline void require_within_ceiling(std::uint64_t value, const std::string& what) {
    const std::size_t ceiling = max_order_ceiling();
    if (value > ceiling) {
        throw std::invalid_argument(what + " " + std::to_string(value) +
                                    " exceeds the truncation ceiling " + std::to_string(ceiling) +
                                    " (set " + kMaxOrderEnvVar + " to raise it)");
    }
}

/// Progression strings: "3n+2", "9n+2", or "3^l n+2" (step becomes 3^L with
/// L supplied separately through --ell).
struct ParsedProgression {
    std::uint64_t base = 1;
    bool power_of_ell = false;
    std::uint64_t start = 0;
};

inline ParsedProgression parse_progression(const std::string& text) {
    static const std::regex re(R"(^\s*(\d+)\s*(\^\s*l)?\s*n\s*\+\s*(\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) {
        throw std::invalid_argument("cannot parse progression '" + text +
                                    "': expected forms like 3n+2, 9n+2, or 3^l n+2");
    }
    ParsedProgression p;
    p.base = std::stoull(m[1].str());
    p.power_of_ell = m[2].matched;
    p.start = std::stoull(m[3].str());
    if (p.base == 0) throw std::invalid_argument("progression step must be >= 1");
    return p;
}

inline std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
    const std::uint64_t limit = std::uint64_t{1} << 40;
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > limit / base) {
            throw std::invalid_argument("progression step overflows the supported range");
        }
        r *= base;
    }
    return r;
}

inline std::vector<long> parse_int_list(const std::string& text) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stol(item));
    }
    return out;
}

struct GlobalOptions {
    std::string format = "text";
    std::string out_path;
    unsigned threads = default_thread_count();
};

namespace detail {

inline int write_output(const GlobalOptions& opts, std::ostream& fallback, const json& envelope,
                        const std::string& text_body, const std::string& csv_body, int exit_code) {
    std::ofstream file;
    std::ostream* sink = &fallback;
    if (!opts.out_path.empty()) {
        file.open(opts.out_path);
        if (!file) throw std::runtime_error("cannot open output file " + opts.out_path);
        sink = &file;
    }
    if (opts.format == "json") {
        *sink << envelope.dump(2) << '\n';
    } else if (opts.format == "csv") {
        *sink << csv_body;
    } else {
        *sink << text_body;
    }
    return exit_code;
}

inline json envelope(const std::string& command, json parameters, json report) {
    return json{{"header", json{{"command", command}, {"parameters", std::move(parameters)}}},
                {"report", std::move(report)}};
}

template <typename Ring>
std::string series_text(const std::string& title, const TruncatedSeries<Ring>& s) {
    std::ostringstream out;
    out << title << " (order " << s.order();
    if constexpr (Ring::modular) out << ", mod " << s.ring().modulus();
    out << ")\n";
    for (std::size_t i = 0; i <= s.order(); ++i) {
        out << "q^" << i << ": " << decimal(s[i]) << '\n';
    }
    return out.str();
}

template <typename Ring>
std::string series_csv(const TruncatedSeries<Ring>& s) {
    std::ostringstream out;
    out << "n,coefficient\n";
    for (std::size_t i = 0; i <= s.order(); ++i) out << i << ',' << decimal(s[i]) << '\n';
    return out.str();
}

inline std::string polynomial_text(const std::string& title, const QPolynomial& p) {
    std::ostringstream out;
    out << title << " (degree " << p.degree() << ")\n";
    for (std::size_t i = 0; i <= p.degree(); ++i) {
        out << "q^" << i << ": " << p.coefficient(i).get_str() << '\n';
    }
    return out.str();
}

inline std::string polynomial_csv(const QPolynomial& p) {
    std::ostringstream out;
    out << "n,coefficient\n";
    for (std::size_t i = 0; i <= p.degree(); ++i) {
        out << i << ',' << p.coefficient(i).get_str() << '\n';
    }
    return out.str();
}

inline std::string render_matrix(const ColorCoefficientArray& a) {
    std::ostringstream out;
    if (a.dims() == 0) {
        out << "  " << a.data()[0].get_str() << '\n';
        return out.str();
    }
    std::size_t width = 1;
    for (const auto& v : a.data()) width = std::max(width, v.get_str().size());
    if (a.dims() == 1) {
        out << " ";
        for (const auto& v : a.data()) out << ' ' << std::setw(static_cast<int>(width)) << v.get_str();
        out << '\n';
        return out.str();
    }
    // rows = t1, columns = last axis; higher-dimensional arrays print as
    // blocks of the last two axes.
    const unsigned side = a.side();
    const std::size_t cells = a.cell_count();
    const std::size_t per_row = side;
    const std::size_t per_block = static_cast<std::size_t>(side) * side;
    for (std::size_t i = 0; i < cells; ++i) {
        if (i % per_row == 0) out << ' ';
        out << ' ' << std::setw(static_cast<int>(width)) << a.data()[i].get_str();
        if ((i + 1) % per_row == 0) out << '\n';
        if (a.dims() > 2 && (i + 1) % per_block == 0 && i + 1 < cells) out << '\n';
    }
    return out.str();
}

inline std::string matrix_csv(const ColorCoefficientArray& a) {
    std::ostringstream out;
    const unsigned side = a.side();
    if (a.dims() == 0) {
        out << "value\n" << a.data()[0].get_str() << '\n';
    } else if (a.dims() == 1) {
        for (unsigned t = 0; t < side; ++t) out << (t ? "," : "") << "t1=" << t;
        out << '\n';
        for (unsigned t = 0; t < side; ++t) {
            out << (t ? "," : "") << a.data()[t].get_str();
        }
        out << '\n';
    } else if (a.dims() == 2) {
        out << "t1";
        for (unsigned t = 0; t < side; ++t) out << ",t2=" << t;
        out << '\n';
        for (unsigned r = 0; r < side; ++r) {
            out << r;
            for (unsigned c = 0; c < side; ++c) {
                out << ',' << a.data()[static_cast<std::size_t>(r) * side + c].get_str();
            }
            out << '\n';
        }
    } else {
        for (std::size_t i = 0; i < a.dims(); ++i) out << 't' << (i + 1) << ',';
        out << "value\n";
        std::size_t flat = 0;
        qcolor::detail::for_each_index(a.dims(), side, [&](const std::vector<unsigned>& idx) {
            for (unsigned v : idx) out << v << ',';
            out << a.data()[flat++].get_str() << '\n';
        });
    }
    return out.str();
}

}  // namespace detail

// --------------------------------------------------------------------------
// series
// --------------------------------------------------------------------------

struct SeriesOptions {
    std::string family = "ckj";
    unsigned k = 2;
    unsigned j = 1;
    unsigned d = 1;
    unsigned r = 1;
    unsigned max_part = 1;
    std::uint64_t order = 50;
    std::uint64_t modulus = 0;  // 0 = exact
};

inline int run_series(const SeriesOptions& o, const GlobalOptions& g, std::ostream& out) {
    require_within_ceiling(o.order, "truncation order");
    const std::size_t q = static_cast<std::size_t>(o.order);

    auto emit = [&](const std::string& title, auto&& series, json params) {
        const json report = series_to_json(series);
        return detail::write_output(g, out, detail::envelope("series", std::move(params), report),
                                    detail::series_text(title, series),
                                    detail::series_csv(series), 0);
    };

    json params{{"family", o.family}, {"order", o.order}};
    if (o.modulus) params["modulus"] = o.modulus;

    auto dispatch = [&](auto ring) -> int {
        if (o.family == "ckj") {
            params["k"] = o.k;
            params["j"] = o.j;
            return emit("C_{" + std::to_string(o.k) + "," + std::to_string(o.j) + "}",
                        ckj_series({o.k, o.j}, q, ring), params);
        }
        if (o.family == "eta") {
            params["k"] = o.k;
            params["j"] = o.j;
            EtaForm form;
            if (o.j == 1) {
                form = EtaForm::first;
            } else if (o.j + 1 == o.k) {
                form = EtaForm::penultimate;
            } else if (o.j == o.k) {
                form = EtaForm::full;
            } else {
                throw std::invalid_argument("eta family needs j in {1, k-1, k}");
            }
            return emit("C_{" + std::to_string(o.k) + "," + std::to_string(o.j) +
                            "} (product shortcut)",
                        ckj_eta_series(o.k, form, q, ring), params);
        }
        if (o.family == "overpartition") {
            return emit("overpartitions", overpartition_series(q, ring), params);
        }
        if (o.family == "kcolored") {
            params["k"] = o.k;
            return emit(std::to_string(o.k) + "-colored partitions",
                        kcolored_series(o.k, q, ring), params);
        }
        if (o.family == "pochhammer") {
            params["d"] = o.d;
            return emit("(q^" + std::to_string(o.d) + "; q^" + std::to_string(o.d) + ")_inf",
                        pochhammer_inf(o.d, q, ring), params);
        }
        throw std::invalid_argument("unknown series family '" + o.family + "'");
    };

    if (o.family == "macmahon" || o.family == "merca") {
        // exact by definition; reduce afterwards when a modulus is requested
        auto series = o.family == "macmahon"
                          ? macmahon_series(o.r, q)
                          : merca_series(o.r, o.max_part, q);
        params["r"] = o.r;
        if (o.family == "merca") params["M"] = o.max_part;
        const std::string title = o.family == "macmahon"
                                      ? "partitions with exactly " + std::to_string(o.r) +
                                            " part sizes"
                                      : "partitions with exactly " + std::to_string(o.r) +
                                            " part sizes, parts <= " + std::to_string(o.max_part);
        if (o.modulus) return emit(title, reduce_mod(series, o.modulus), params);
        return emit(title, series, params);
    }
    if (o.modulus) return dispatch(ResidueRing(o.modulus));
    return dispatch(ExactIntegers{});
}

// --------------------------------------------------------------------------
// congruence
// --------------------------------------------------------------------------

struct CongruenceOptions {
    unsigned k = 9;
    unsigned j = 1;
    std::uint64_t modulus = 27;
    std::string progression;
    unsigned ell = 0;
    unsigned ell_max = 4;
    std::uint64_t max_index = 1500;
    bool max_given = false;
    bool witness_scan = false;
};

/// Default coefficient bound for witness scans; deeper than the plain
/// progression default since absence below the bound is the report.
inline constexpr std::uint64_t kWitnessScanDefaultBound = 20000;

inline int run_congruence(const CongruenceOptions& o, const GlobalOptions& g, std::ostream& out) {
    if (o.witness_scan) {
        if (o.k != 9 || o.modulus != 27) {
            throw std::invalid_argument("the witness scan targets C_{9,j} mod 27");
        }
        const std::uint64_t bound = o.max_given ? o.max_index : kWitnessScanDefaultBound;
        require_within_ceiling(bound, "scan bound");
        const auto rep = witness_search(o.j, o.ell_max, bound);
        json params{{"k", o.k},        {"j", o.j},
                    {"mod", o.modulus}, {"ell_max", o.ell_max},
                    {"max", bound}, {"witness_scan", true}};
        std::ostringstream text;
        text << "witness scan: C_{9," << o.j << "} mod 27 along 3^l n + 2, l <= " << o.ell_max
             << ", coefficient indices <= " << bound << '\n';
        std::ostringstream csv;
        csv << "ell,step,checked,witness_index,witness_value\n";
        for (const auto& s : rep.scans) {
            text << "  l=" << s.ell << " (step " << s.step << "): ";
            csv << s.ell << ',' << s.step << ',' << s.checked_count << ',';
            if (s.witness) {
                text << "witness at index " << s.witness->index << ", residue "
                     << s.witness->value << '\n';
                csv << s.witness->index << ',' << s.witness->value << '\n';
            } else {
                text << "no witness among " << s.checked_count << " scanned indices\n";
                csv << ",\n";
            }
        }
        return detail::write_output(g, out,
                                    detail::envelope("congruence", std::move(params),
                                                     witness_search_to_json(rep)),
                                    text.str(), csv.str(), rep.any_witness() ? 1 : 0);
    }

    require_within_ceiling(o.max_index, "scan bound");
    if (o.progression.empty()) {
        throw std::invalid_argument("--progression is required (e.g. 3n+2)");
    }
    const auto parsed = parse_progression(o.progression);
    ProgressionSpec spec;
    spec.start = parsed.start;
    spec.step = parsed.power_of_ell ? checked_pow(parsed.base, o.ell) : parsed.base;
    spec.modulus = o.modulus;
    spec.max_index = o.max_index;

    const auto series = ckj_series({o.k, o.j}, spec.max_index, ResidueRing(o.modulus));
    const auto rep = verify_progression(series, spec);

    json params{{"k", o.k},   {"j", o.j},       {"mod", o.modulus},
                {"progression", o.progression}, {"max", o.max_index}};
    if (parsed.power_of_ell) params["ell"] = o.ell;

    std::ostringstream text;
    text << "congruence scan: C_{" << o.k << ',' << o.j << "} mod " << o.modulus << " at indices "
         << spec.start << ", " << spec.start + spec.step << ", ... <= " << spec.max_index << '\n';
    std::ostringstream csv;
    csv << "index,residue\n";
    if (rep.holds) {
        text << "checked " << rep.checked_count << " coefficients: congruence holds\n";
    } else {
        text << "checked " << rep.checked_count << " coefficients: " << rep.witness_total
             << " witnesses";
        if (rep.witness_total > rep.witnesses.size()) {
            text << " (showing first " << rep.witnesses.size() << ")";
        }
        text << '\n';
        for (const auto& w : rep.witnesses) {
            text << "  index " << w.index << ": residue " << w.value << '\n';
            csv << w.index << ',' << w.value << '\n';
        }
    }
    return detail::write_output(
        g, out, detail::envelope("congruence", std::move(params), congruence_report_to_json(rep)),
        text.str(), csv.str(), rep.holds ? 0 : 1);
}

// --------------------------------------------------------------------------
// theorem2
// --------------------------------------------------------------------------

struct Theorem2Options {
    unsigned p = 2;
    unsigned n_max = 100;
    std::string relation = "p2";  // p2 = the mod p^2 identity, p = the mod p relations
};

inline int run_theorem2(const Theorem2Options& o, const GlobalOptions& g, std::ostream& out) {
    require_within_ceiling(o.n_max, "scan bound");
    json params{{"p", o.p}, {"nmax", o.n_max}, {"relation", o.relation}};
    std::ostringstream text;
    std::ostringstream csv;

    if (o.relation == "p") {
        const auto bad = c2pp_mod_p_check(o.p, o.n_max);
        json report{{"p", o.p},
                    {"n_max", o.n_max},
                    {"relation", "p"},
                    {"checked_count", o.n_max + 1},
                    {"mismatches", bad}};
        text << "mod-p relations for c_{" << 2 * o.p << ',' << o.p << "}: checked n <= " << o.n_max
             << ": " << (bad.empty() ? "all hold" : std::to_string(bad.size()) + " failures")
             << '\n';
        csv << "n\n";
        for (unsigned n : bad) csv << n << '\n';
        return detail::write_output(g, out,
                                    detail::envelope("theorem2", std::move(params), report),
                                    text.str(), csv.str(), bad.empty() ? 0 : 1);
    }
    if (o.relation != "p2") throw std::invalid_argument("--relation must be p or p2");

    const auto mismatches = c2pp_check(o.p, o.n_max, g.threads);
    json report{{"p", o.p},
                {"n_max", o.n_max},
                {"relation", "p2"},
                {"checked_count", o.n_max + 1},
                {"mismatches", c2pp_mismatches_to_json(mismatches)}};
    text << "mod p^2 identity for c_{" << 2 * o.p << ',' << o.p << "}: checked n <= " << o.n_max
         << ": "
         << (mismatches.empty() ? "series and partition sides agree"
                                : std::to_string(mismatches.size()) + " mismatches")
         << '\n';
    csv << "n,series_side,partition_side\n";
    for (const auto& m : mismatches) {
        text << "  n=" << m.n << ": series " << m.series_side << " vs partitions "
             << m.partition_side << '\n';
        csv << m.n << ',' << m.series_side << ',' << m.partition_side << '\n';
    }
    return detail::write_output(g, out, detail::envelope("theorem2", std::move(params), report),
                                text.str(), csv.str(), mismatches.empty() ? 0 : 1);
}

// --------------------------------------------------------------------------
// box
// --------------------------------------------------------------------------

struct BoxOptions {
    unsigned max_part = 1;   // M
    unsigned max_parts = 1;  // N
    unsigned r = 0;
    bool r_given = false;
    std::string what = "f-sizes";
};

inline int run_box(const BoxOptions& o, const GlobalOptions& g, std::ostream& out) {
    const BoxSpec box{o.max_part, o.max_parts};
    json params{{"M", o.max_part}, {"N", o.max_parts}, {"what", o.what}};
    const std::string box_name =
        std::to_string(o.max_part) + "x" + std::to_string(o.max_parts) + " box";

    if (o.what == "f-sizes" || o.what == "brute") {
        if (!o.r_given) throw std::invalid_argument("--r is required for " + o.what);
        params["r"] = o.r;
        const QPolynomial poly =
            o.what == "f-sizes" ? f_box_sizes(box, o.r) : box_sizes_brute(box, o.r);
        json report{{"M", o.max_part},
                    {"N", o.max_parts},
                    {"r", o.r},
                    {"polynomial", polynomial_to_json(poly)}};
        const std::string title = "partitions in the " + box_name + " with exactly " +
                                  std::to_string(o.r) + " part sizes" +
                                  (o.what == "brute" ? " (enumerated)" : "");
        return detail::write_output(g, out, detail::envelope("box", std::move(params), report),
                                    detail::polynomial_text(title, poly),
                                    detail::polynomial_csv(poly), 0);
    }
    if (o.what == "qbinomial") {
        const auto poly = qbinomial(o.max_part, o.max_parts);
        json report{{"M", o.max_part}, {"N", o.max_parts}, {"polynomial", polynomial_to_json(poly)}};
        return detail::write_output(
            g, out, detail::envelope("box", std::move(params), report),
            detail::polynomial_text("partitions in the " + box_name, poly),
            detail::polynomial_csv(poly), 0);
    }
    if (o.what == "dousse-kim") {
        const auto polys = dousse_kim_poly(box);
        json coeffs = json::array();
        for (const auto& p : polys) coeffs.push_back(polynomial_to_json(p));
        json report{{"M", o.max_part}, {"N", o.max_parts}, {"t_coefficients", std::move(coeffs)}};
        std::ostringstream text;
        std::ostringstream csv;
        text << "overpartitions in the " << box_name << ", t marking overlined parts\n";
        csv << "t_power,n,coefficient\n";
        for (std::size_t k = 0; k < polys.size(); ++k) {
            text << detail::polynomial_text("coefficient of t^" + std::to_string(k), polys[k]);
            for (std::size_t i = 0; i <= polys[k].degree(); ++i) {
                csv << k << ',' << i << ',' << polys[k].coefficient(i).get_str() << '\n';
            }
        }
        return detail::write_output(g, out, detail::envelope("box", std::move(params), report),
                                    text.str(), csv.str(), 0);
    }
    throw std::invalid_argument("unknown box output '" + o.what +
                                "' (expected f-sizes, brute, qbinomial, or dousse-kim)");
}

// --------------------------------------------------------------------------
// unimodal
// --------------------------------------------------------------------------

struct UnimodalOptions {
    unsigned max_part = 1;
    unsigned max_parts = 1;
    unsigned colors = 2;
    unsigned weight = 0;
    unsigned specialize = 0;  // 0 = last variable
    unsigned direction_bound = 2;
    std::string cut_start;
    std::string cut_dir;
};

inline int run_unimodal(const UnimodalOptions& o, const GlobalOptions& g, std::ostream& out) {
    const BoxSpec box{o.max_part, o.max_parts};
    const unsigned specialize = o.specialize == 0 ? o.colors : o.specialize;
    const auto array = specialize_one(box_color_array(box, o.colors, o.weight), specialize);
    const auto rep = unimodality_scan_array(array, o.direction_bound, g.threads);

    json params{{"M", o.max_part},   {"N", o.max_parts},        {"k", o.colors},
                {"n", o.weight},     {"specialize", specialize}, {"dirbound", o.direction_bound}};
    json report{{"array", array_to_json(array)},
                {"scan", unimodality_report_to_json(rep)}};

    std::ostringstream text;
    text << "coefficient array: " << o.max_part << "x" << o.max_parts << " box, k=" << o.colors
         << ", coefficient of q^" << o.weight << ", x" << specialize << " = 1\n";
    text << detail::render_matrix(array);
    text << "scanned " << rep.cuts_checked << " cuts with direction bound " << o.direction_bound
         << ": ";
    if (rep.clean()) {
        text << "no violations\n";
    } else {
        text << rep.violations.size() << " violations\n";
        for (const auto& v : rep.violations) {
            text << "  start (";
            for (std::size_t i = 0; i < v.start.size(); ++i) {
                text << (i ? "," : "") << v.start[i];
            }
            text << ") direction (";
            for (std::size_t i = 0; i < v.direction.size(); ++i) {
                text << (i ? "," : "") << v.direction[i];
            }
            text << "):";
            for (const auto& x : v.sequence) text << ' ' << x.get_str();
            text << '\n';
        }
    }

    if (!o.cut_start.empty() || !o.cut_dir.empty()) {
        if (o.cut_start.empty() || o.cut_dir.empty()) {
            throw std::invalid_argument("--cut-start and --cut-dir must be given together");
        }
        const CutSpec cut{parse_int_list(o.cut_start), parse_int_list(o.cut_dir)};
        const auto seq = linear_cut(array, cut);
        report["cut"] = cut_to_json(cut.start, cut.direction, seq);
        text << "cut from (" << o.cut_start << ") along (" << o.cut_dir << "):";
        for (const auto& x : seq) text << ' ' << x.get_str();
        text << (is_unimodal(seq) ? "  [unimodal]\n" : "  [NOT unimodal]\n");
    }

    return detail::write_output(g, out, detail::envelope("unimodal", std::move(params), report),
                                text.str(), detail::matrix_csv(array), rep.clean() ? 0 : 1);
}

// --------------------------------------------------------------------------
// oracle-check
// --------------------------------------------------------------------------

struct OracleOptions {
    std::string suite;
    unsigned k_max = 5;
    unsigned n_max = 20;
    unsigned box_m_max = 6;
    unsigned box_n_max = 6;
    unsigned p = 3;
    std::uint64_t order = 20;
};

inline int run_oracle_check(const OracleOptions& o, const GlobalOptions& g, std::ostream& out) {
    json params{{"suite", o.suite}};
    json mismatches = json::array();
    std::uint64_t checked = 0;
    std::ostringstream detail_text;

    if (o.suite == "ckj") {
        params["kmax"] = o.k_max;
        params["nmax"] = o.n_max;
        for (unsigned k = 1; k <= o.k_max; ++k) {
            for (unsigned j = 1; j <= k; ++j) {
                const auto series = ckj_series({k, j}, o.n_max, ExactIntegers{});
                for (unsigned n = 0; n <= o.n_max; ++n) {
                    ++checked;
                    const mpz_class brute = ckj_brute({k, j}, n);
                    if (series[n] != brute) {
                        mismatches.push_back(json{{"k", k},
                                                  {"j", j},
                                                  {"n", n},
                                                  {"series", decimal(series[n])},
                                                  {"brute", decimal(brute)}});
                        detail_text << "  c_{" << k << ',' << j << "}(" << n << "): series "
                                    << decimal(series[n]) << " vs brute " << decimal(brute)
                                    << '\n';
                    }
                }
            }
        }
    } else if (o.suite == "box") {
        params["Mmax"] = o.box_m_max;
        params["Nmax"] = o.box_n_max;
        for (unsigned M = 1; M <= o.box_m_max; ++M) {
            for (unsigned N = 1; N <= o.box_n_max; ++N) {
                const BoxSpec box{M, N};
                const auto f = f_box_sizes_all(box);
                for (unsigned r = 0; r <= box.min_side(); ++r) {
                    ++checked;
                    const auto brute = box_sizes_brute(box, r);
                    if (f[r] != brute) {
                        mismatches.push_back(json{{"M", M}, {"N", N}, {"r", r}});
                        detail_text << "  f_{" << M << 'x' << N << ";" << r << "} disagrees\n";
                    }
                }
            }
        }
    } else if (o.suite == "theorem2") {
        params["p"] = o.p;
        params["nmax"] = o.n_max;
        const auto found = c2pp_check(o.p, o.n_max, g.threads);
        checked = o.n_max + 1;
        mismatches = c2pp_mismatches_to_json(found);
        for (const auto& m : found) {
            detail_text << "  n=" << m.n << ": series " << m.series_side << " vs partitions "
                        << m.partition_side << '\n';
        }
    } else if (o.suite == "merca-limit") {
        params["Mmax"] = o.box_m_max;
        params["order"] = o.order;
        require_within_ceiling(o.order, "truncation order");
        const auto q = static_cast<std::size_t>(o.order);
        for (unsigned M = 1; M <= o.box_m_max; ++M) {
            // any N >= Q reaches the limit below q^Q
            const unsigned tall = std::max<unsigned>(static_cast<unsigned>(q), M);
            const auto f = f_box_sizes_all(BoxSpec{M, tall});
            for (unsigned r = 0; r <= M; ++r) {
                ++checked;
                const auto limit = merca_series(r, M, q);
                const bool same = f[r].truncated(q) == limit;
                if (!same) {
                    mismatches.push_back(json{{"M", M}, {"r", r}});
                    detail_text << "  N_{" << r << ",<=" << M << "} disagrees with the box limit\n";
                }
            }
        }
    } else {
        throw std::invalid_argument("unknown oracle suite '" + o.suite +
                                    "' (expected ckj, box, theorem2, or merca-limit)");
    }

    json report{{"suite", o.suite},
                {"checked_count", checked},
                {"mismatches", mismatches}};
    std::ostringstream text;
    text << "oracle suite " << o.suite << ": " << checked << " checks, " << mismatches.size()
         << " mismatches\n"
         << detail_text.str();
    std::ostringstream csv;
    csv << "suite,checked,mismatches\n"
        << o.suite << ',' << checked << ',' << mismatches.size() << '\n';
    return detail::write_output(g, out,
                                detail::envelope("oracle-check", std::move(params), report),
                                text.str(), csv.str(), mismatches.empty() ? 0 : 1);
}

// --------------------------------------------------------------------------
// driver
// --------------------------------------------------------------------------

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact q-series engine for colored partitions, congruence scans, and box"
                 " partition statistics"};
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--format", global.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.add_option("--out", global.out_path, "write the report to a file instead of stdout");
    app.add_option("--threads", global.threads, "worker threads for scan commands")
        ->capture_default_str();

    SeriesOptions series_opts;
    auto* series_cmd = app.add_subcommand("series", "expand a generating function");
    series_cmd
        ->add_option("--family", series_opts.family,
                     "ckj | eta | overpartition | kcolored | pochhammer | macmahon | merca")
        ->capture_default_str();
    series_cmd->add_option("--k", series_opts.k, "number of colors");
    series_cmd->add_option("--j", series_opts.j, "colors allowed per part size");
    series_cmd->add_option("--d", series_opts.d, "pochhammer step");
    series_cmd->add_option("--r", series_opts.r, "number of part sizes");
    series_cmd->add_option("--M", series_opts.max_part, "largest part bound");
    series_cmd->add_option("--order", series_opts.order, "truncation order")
        ->capture_default_str();
    series_cmd->add_option("--mod", series_opts.modulus, "reduce coefficients mod m");

    CongruenceOptions cong_opts;
    auto* cong_cmd =
        app.add_subcommand("congruence", "scan an arithmetic progression of c_{k,j} mod m");
    cong_cmd->add_option("--k", cong_opts.k, "number of colors")->capture_default_str();
    cong_cmd->add_option("--j", cong_opts.j, "colors allowed per part size")->required();
    cong_cmd->add_option("--mod", cong_opts.modulus, "congruence modulus")->capture_default_str();
    cong_cmd->add_option("--progression", cong_opts.progression,
                         "progression, e.g. 3n+2 or '3^l n+2' with --ell");
    cong_cmd->add_option("--ell", cong_opts.ell, "exponent for 3^l n+2 progressions");
    auto* max_opt =
        cong_cmd->add_option("--max", cong_opts.max_index, "largest coefficient index scanned")
            ->capture_default_str();
    cong_cmd->add_flag("--witness-scan", cong_opts.witness_scan,
                       "scan 3^l n+2 for every l <= --ell-max, reporting minimal witnesses");
    cong_cmd->add_option("--ell-max", cong_opts.ell_max, "largest l for --witness-scan")
        ->capture_default_str();

    Theorem2Options t2_opts;
    auto* t2_cmd = app.add_subcommand(
        "theorem2", "compare series and partition-enumeration sides of the c_{2p,p} identity");
    t2_cmd->add_option("--p", t2_opts.p, "prime p")->required();
    t2_cmd->add_option("--nmax", t2_opts.n_max, "check all n up to this bound")
        ->capture_default_str();
    t2_cmd->add_option("--relation", t2_opts.relation, "p2 (mod p^2 identity) or p (mod p laws)")
        ->capture_default_str();

    BoxOptions box_opts;
    auto* box_cmd = app.add_subcommand("box", "box partition generating functions");
    box_cmd->add_option("--M", box_opts.max_part, "largest part")->required();
    box_cmd->add_option("--N", box_opts.max_parts, "most parts")->required();
    auto* r_opt = box_cmd->add_option("--r", box_opts.r, "number of distinct part sizes");
    box_cmd->add_option("--what", box_opts.what, "f-sizes | brute | qbinomial | dousse-kim")
        ->capture_default_str();

    UnimodalOptions uni_opts;
    auto* uni_cmd = app.add_subcommand(
        "unimodal", "build a color coefficient array and scan its lattice cuts");
    uni_cmd->add_option("--M", uni_opts.max_part, "largest part")->required();
    uni_cmd->add_option("--N", uni_opts.max_parts, "most parts")->required();
    uni_cmd->add_option("--k", uni_opts.colors, "number of colors")->required();
    uni_cmd->add_option("--n", uni_opts.weight, "fixed weight (exponent of q)")->required();
    uni_cmd->add_option("--specialize", uni_opts.specialize,
                        "which variable to set to 1 (default: the last)");
    uni_cmd->add_option("--dirbound", uni_opts.direction_bound, "direction coordinate bound")
        ->capture_default_str();
    uni_cmd->add_option("--cut-start", uni_opts.cut_start, "also report one cut: start, e.g. 0,2");
    uni_cmd->add_option("--cut-dir", uni_opts.cut_dir, "direction for --cut-start, e.g. 2,-1");

    OracleOptions oracle_opts;
    auto* oracle_cmd = app.add_subcommand(
        "oracle-check", "closed formulas against brute-force enumeration oracles");
    oracle_cmd->add_option("suite", oracle_opts.suite, "ckj | box | theorem2 | merca-limit")
        ->required();
    oracle_cmd->add_option("--kmax", oracle_opts.k_max, "largest k (ckj)")->capture_default_str();
    oracle_cmd->add_option("--nmax", oracle_opts.n_max, "largest n (ckj, theorem2)")
        ->capture_default_str();
    oracle_cmd->add_option("--Mmax", oracle_opts.box_m_max, "largest M (box, merca-limit)")
        ->capture_default_str();
    oracle_cmd->add_option("--Nmax", oracle_opts.box_n_max, "largest N (box)")
        ->capture_default_str();
    oracle_cmd->add_option("--p", oracle_opts.p, "prime (theorem2)")->capture_default_str();
    oracle_cmd->add_option("--order", oracle_opts.order, "truncation order (merca-limit)")
        ->capture_default_str();

    std::vector<const char*> argv;
    argv.push_back("qcolor");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (series_cmd->parsed()) return run_series(series_opts, global, out);
        if (cong_cmd->parsed()) {
            cong_opts.max_given = max_opt->count() > 0;
            return run_congruence(cong_opts, global, out);
        }
        if (t2_cmd->parsed()) return run_theorem2(t2_opts, global, out);
        if (box_cmd->parsed()) {
            box_opts.r_given = r_opt->count() > 0;
            return run_box(box_opts, global, out);
        }
        if (uni_cmd->parsed()) return run_unimodal(uni_opts, global, out);
        if (oracle_cmd->parsed()) return run_oracle_check(oracle_opts, global, out);
        err << "error: no command selected\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace qcolor::cli
