#pragma once

// Serialization for the domain types plus deterministic text output: doubles
// are printed as shortest round-trip decimals, CSV files use \n endings and
// carry the schema stamp on their first line, JSON objects carry a
// schema_version field. Exact rationals serialize as "num/den" strings with a
// double mirror for plotting.

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "irrlab/dimension.hpp"
#include "irrlab/errors.hpp"
#include "irrlab/interval_map.hpp"
#include "irrlab/irregular.hpp"
#include "irrlab/lorenz.hpp"
#include "irrlab/rational.hpp"
#include "irrlab/symbolic.hpp"

namespace irrlab::io {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "irrlab-1";

inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string format_rational(const Rational& r) {
    std::ostringstream out;
    out << boost::multiprecision::numerator(r) << "/" << boost::multiprecision::denominator(r);
    return out.str();
}

inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            if (text.find('.') != std::string::npos || text.find('e') != std::string::npos ||
                text.find('E') != std::string::npos)
                return rational_from_double(std::stod(text));
            return Rational(BigInt(text));
        }
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw error(errc::bad_params, "zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw error(errc::bad_params, "cannot parse rational '" + text + "'");
    }
}

// ---------------------------------------------------------------------------
// Subshift specs

inline json subshift_to_json(const symbolic::SubshiftSpec& spec) {
    json t = json::array();
    for (int i = 0; i < spec.alphabet_size(); ++i) {
        json row = json::array();
        for (int j = 0; j < spec.alphabet_size(); ++j) row.push_back(spec.allowed(i, j) ? 1 : 0);
        t.push_back(std::move(row));
    }
    return json{{"schema_version", kSchemaVersion},
                {"alphabet_size", spec.alphabet_size()},
                {"transition", std::move(t)},
                {"name", spec.name()}};
}

inline symbolic::SubshiftSpec subshift_from_json(const json& j) {
    if (!j.contains("alphabet_size") || !j.contains("transition"))
        throw error(errc::bad_params, "subshift JSON needs alphabet_size and transition");
    int n = j.at("alphabet_size").get<int>();
    std::vector<std::vector<int>> t;
    for (const auto& row : j.at("transition")) t.push_back(row.get<std::vector<int>>());
    std::string name = j.value("name", std::string{});
    return symbolic::SubshiftSpec(n, std::move(t), std::move(name));
}

// ---------------------------------------------------------------------------
// Words and locally constant tables

inline std::string word_to_string(const symbolic::Word& w) {
    std::string s;
    for (auto v : w) {
        if (v < 0 || v > 9) throw error(errc::bad_params, "word symbols above 9 not serializable");
        s.push_back(static_cast<char>('0' + v));
    }
    return s;
}

inline symbolic::Word word_from_string(const std::string& s) {
    symbolic::Word w;
    for (char c : s) {
        if (c < '0' || c > '9') throw error(errc::bad_params, "word characters must be digits");
        w.push_back(c - '0');
    }
    return w;
}

inline json table_to_json(const std::map<symbolic::Word, Rational>& table) {
    json out = json::object();
    for (const auto& [w, v] : table) out[word_to_string(w)] = format_rational(v);
    return out;
}

inline std::map<symbolic::Word, Rational> table_from_json(const json& j) {
    std::map<symbolic::Word, Rational> table;
    for (auto it = j.begin(); it != j.end(); ++it)
        table[word_from_string(it.key())] = parse_rational(it.value().get<std::string>());
    return table;
}

inline json roof_to_json(const irregular::RoofFunction& roof) {
    return json{{"schema_version", kSchemaVersion},
                {"alphabet_size", roof.alphabet_size()},
                {"window_radius", roof.window_radius()},
                {"table", table_to_json(roof.table())}};
}

inline irregular::RoofFunction roof_from_json(const json& j) {
    return irregular::RoofFunction(j.at("alphabet_size").get<int>(),
                                   j.at("window_radius").get<int>(),
                                   table_from_json(j.at("table")));
}

// ---------------------------------------------------------------------------
// Oscillation reports and block programs

inline json report_summary_json(const irregular::OscillationReport& report) {
    json out{{"schema_version", kSchemaVersion},
             {"verdict", report.verdict},
             {"bound_2_over_3C", to_double(report.bound)},
             {"bound_2_over_3C_exact", format_rational(report.bound)},
             {"transient_cutoff", report.transient_cutoff},
             {"checkpoint_count", report.checkpoints.size()}};
    if (report.liminf_est) {
        out["liminf_est"] = to_double(*report.liminf_est);
        out["liminf_est_exact"] = format_rational(*report.liminf_est);
    }
    if (report.limsup_est) {
        out["limsup_est"] = to_double(*report.limsup_est);
        out["limsup_est_exact"] = format_rational(*report.limsup_est);
    }
    if (report.gap) {
        out["gap"] = to_double(*report.gap);
        out["gap_exact"] = format_rational(*report.gap);
    }
    return out;
}

inline std::string report_checkpoints_csv(const irregular::OscillationReport& report) {
    std::ostringstream out;
    out << "# schema=" << kSchemaVersion << "\n";
    out << "j,N_j,parity,ratio\n";
    for (const auto& cp : report.checkpoints)
        out << cp.j << "," << cp.N << "," << (cp.odd ? "odd" : "even") << ","
            << format_double(to_double(cp.ratio)) << "\n";
    return out.str();
}

inline const char* block_kind_name(irregular::BlockKind kind) {
    switch (kind) {
        case irregular::BlockKind::connector: return "connector";
        case irregular::BlockKind::p0_block: return "p0-block";
        case irregular::BlockKind::p1_block: return "p1-block";
    }
    return "unknown";
}

inline json program_to_json(const irregular::IrregularPointProgram& program) {
    const auto& s = program.schedule;
    json n = json::array();
    for (auto v : s.n) n.push_back(v);
    json big_n = json::array();
    for (const auto& v : s.N) big_n.push_back(v.str());
    json blocks = json::array();
    for (const auto& b : program.block_index)
        blocks.push_back(json{{"start", b.start}, {"kind", block_kind_name(b.kind)}, {"length", b.length}});
    return json{{"schema_version", kSchemaVersion},
                {"p0", word_to_string(program.p0.word)},
                {"p1", word_to_string(program.p1.word)},
                {"schedule",
                 json{{"L", s.L},
                      {"L0", s.L0},
                      {"L1", s.L1},
                      {"C", format_rational(s.C)},
                      {"delta", format_rational(s.delta)},
                      {"n", std::move(n)},
                      {"N", std::move(big_n)}}},
                {"blocks", std::move(blocks)},
                {"backward_tail", word_to_string(program.sequence.left_period())},
                {"forward_tail", word_to_string(program.sequence.right_period())}};
}

// ---------------------------------------------------------------------------
// Horseshoe certificates, box counts, lorenz models

inline json certificate_to_json(const interval::HorseshoeCertificate& cert) {
    json intervals = json::array();
    for (const auto& [lo, hi] : cert.intervals) intervals.push_back(json::array({lo, hi}));
    return json{{"schema_version", kSchemaVersion},
                {"k", cert.k},
                {"p", cert.p},
                {"intervals", std::move(intervals)},
                {"bound_nats", cert.bound_nats}};
}

inline std::string box_counts_csv(const dimension::BoxCountReport& report) {
    std::ostringstream out;
    out << "# schema=" << kSchemaVersion << "\n";
    out << "epsilon,count\n";
    for (std::size_t i = 0; i < report.scales.size(); ++i)
        out << format_double(report.scales[i]) << "," << report.counts[i] << "\n";
    return out.str();
}

inline json box_summary_json(const dimension::BoxCountReport& report) {
    return json{{"schema_version", kSchemaVersion},
                {"slope", report.slope},
                {"stderr", report.stderr_slope},
                {"levels", report.scales.size()}};
}

inline json lorenz_model_to_json(const lorenz::LorenzModel& model) {
    return json{{"schema_version", kSchemaVersion},
                {"lambda1", model.lambda1},
                {"lambda2", model.lambda2},
                {"lambda3", model.lambda3},
                {"Theta", model.theta},
                {"B", model.b_amp},
                {"T0", model.t0},
                {"c_g", model.c_g},
                {"alpha", model.alpha},
                {"beta_c", model.beta_c},
                {"regularity_flag", model.regularity_flag},
                {"expansion_constant", model.expansion_constant},
                {"uniformly_expanding", model.uniformly_expanding}};
}

inline lorenz::LorenzModel lorenz_model_from_json(const json& j) {
    return lorenz::LorenzModel(j.at("lambda1").get<double>(), j.at("lambda2").get<double>(),
                               j.at("lambda3").get<double>(), j.at("Theta").get<double>(),
                               j.value("B", 0.25), j.value("T0", 1.0), j.value("c_g", 0.75));
}

// ---------------------------------------------------------------------------
// Generic CSV + SVG helpers

inline std::string series_csv(const std::string& header, const std::vector<double>& xs,
                              const std::vector<double>& ys) {
    std::ostringstream out;
    out << "# schema=" << kSchemaVersion << "\n";
    out << header << "\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        out << format_double(xs[i]) << "," << format_double(ys[i]) << "\n";
    return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error(errc::bad_params, "cannot open " + path + " for writing");
    out << content;
}

/// Minimal axis-labeled polyline plot. Never required by any check.
inline std::string svg_polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                                const std::string& x_label, const std::string& y_label,
                                const std::string& title) {
    const double width = 640, height = 480, margin = 60;
    double xmin = xs.empty() ? 0 : xs[0], xmax = xmin, ymin = ys.empty() ? 0 : ys[0], ymax = ymin;
    for (double x : xs) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
    }
    for (double y : ys) {
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    auto sx = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin); };
    auto sy = [&](double y) { return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin); };
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\">\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\">" << title << "</text>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
        << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
        << height - margin << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"" << height - 16 << "\" text-anchor=\"middle\">"
        << x_label << " [" << format_double(xmin) << ", " << format_double(xmax) << "]</text>\n";
    out << "<text x=\"18\" y=\"" << height / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << height / 2 << ")\">" << y_label << " [" << format_double(ymin) << ", " << format_double(ymax)
        << "]</text>\n";
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) out << format_double(sx(xs[i])) << "," << format_double(sy(ys[i])) << " ";
    out << "\"/>\n</svg>\n";
    return out.str();
}

} // namespace irrlab::io
