// io.hpp -- construction-spec grammar, CSV and JSON serialization, plot-data
// emission, atomic file writes. All numeric text uses fixed "%.12g" so that
// identical inputs produce byte-identical files.
#pragma once

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "aperiodic/alphabet.hpp"
#include "aperiodic/recurrence.hpp"
#include "aperiodic/spectral.hpp"
#include "aperiodic/verify.hpp"

namespace aperiodic::io {

using json = nlohmann::ordered_json;

/// Grammar: "rs" | "signs:<+->..." | "fourier:<n>". "rs" is an alias for
/// "signs:+"; "fourier:2" generates the same weights as "rs".
inline ConstructionSpec parse_construction(std::string_view text, int level) {
    if (text == "rs")
        return ConstructionSpec::rudin_shapiro(level);
    if (text.rfind("signs:", 0) == 0) {
        const std::string_view body = text.substr(6);
        if (body.empty())
            throw std::invalid_argument("construction 'signs:': empty sign word");
        std::vector<int> pattern;
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (body[i] == '+')
                pattern.push_back(+1);
            else if (body[i] == '-')
                pattern.push_back(-1);
            else
                throw std::invalid_argument(
                    "construction '" + std::string(text) + "': expected '+' or "
                    "'-' at position " + std::to_string(i + 7));
        }
        return ConstructionSpec::binary(SignProgram::periodic(pattern), level);
    }
    if (text.rfind("fourier:", 0) == 0) {
        const std::string body(text.substr(8));
        int n = 0;
        try {
            std::size_t used = 0;
            n = std::stoi(body, &used);
            if (used != body.size())
                throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw std::invalid_argument("construction '" + std::string(text) +
                                        "': order must be an integer");
        }
        if (n < 2)
            throw std::invalid_argument("construction '" + std::string(text) +
                                        "': order must be >= 2");
        return ConstructionSpec::fourier(n, level);
    }
    throw std::invalid_argument("construction '" + std::string(text) +
                                "': unknown family (expected rs | signs:... | "
                                "fourier:n)");
}

/// Canonical text of a spec, e.g. "signs:-+" or "fourier:3"; "signs:+"
/// canonicalizes to "rs".
inline std::string canonical_construction(const ConstructionSpec& spec) {
    if (spec.family() == Family::fourier)
        return "fourier:" + std::to_string(spec.order());
    std::string signs;
    for (int s : spec.signs().pattern())
        signs += s == 1 ? '+' : '-';
    return signs == "+" ? "rs" : "signs:" + signs;
}

inline std::string format_double(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", v);
    return buffer;
}

/// Writes content to `path` atomically (temp file in the same directory,
/// then rename).
inline void atomic_write(const std::filesystem::path& path,
                         const std::string& content) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.flush())
            throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

/// CSV form of a weight sequence: header `index,re,im,exponent`, indices
/// starting at 1, values formatted "%.12g", exponents exact.
inline std::string sequence_csv(const CoefficientSequence& seq) {
    std::string out = "index,re,im,exponent\n";
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const std::complex<double> v = seq.value(i);
        out += std::to_string(i + 1);
        out += ',';
        out += format_double(v.real());
        out += ',';
        out += format_double(v.imag());
        out += ',';
        out += std::to_string(seq.exponent(i));
        out += '\n';
    }
    return out;
}

/// Reads a sequence back from the CSV form. The order is external metadata
/// (the CSV stores residues); values are cross-checked against the residues.
inline CoefficientSequence read_sequence_csv(std::istream& in, int order) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("sequence csv: empty input");
    if (line.rfind("index,re,im,exponent", 0) != 0)
        throw std::runtime_error("sequence csv: missing header");
    std::vector<std::uint8_t> exponents;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        ++row;
        std::istringstream fields(line);
        std::string index_text, re_text, im_text, exp_text;
        if (!std::getline(fields, index_text, ',') ||
            !std::getline(fields, re_text, ',') ||
            !std::getline(fields, im_text, ',') ||
            !std::getline(fields, exp_text))
            throw std::runtime_error("sequence csv: malformed row " +
                                     std::to_string(row));
        const int exponent = std::stoi(exp_text);
        if (exponent < 0 || exponent >= order)
            throw std::runtime_error("sequence csv: exponent out of range in row " +
                                     std::to_string(row));
        const std::complex<double> stated(std::stod(re_text), std::stod(im_text));
        if (std::abs(stated - unit_root(order, exponent)) > 1e-9)
            throw std::runtime_error(
                "sequence csv: value does not match its exponent in row " +
                std::to_string(row));
        exponents.push_back(static_cast<std::uint8_t>(exponent));
    }
    if (exponents.empty())
        throw std::runtime_error("sequence csv: no data rows");
    return CoefficientSequence(order, std::move(exponents));
}

inline CoefficientSequence read_sequence_csv_file(const std::filesystem::path& path,
                                                  int order) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path.string());
    return read_sequence_csv(in, order);
}

/// JSON form of a weight sequence with the construction echo.
inline json sequence_json(const CoefficientSequence& seq,
                          const ConstructionSpec& spec,
                          const std::string& requested) {
    json out;
    out["schema"] = 1;
    out["construction"] = requested;
    out["canonical"] = canonical_construction(spec);
    if (spec.family() == Family::fourier && spec.order() == 2)
        out["equivalent_to"] = "rs";
    out["family"] = spec.family() == Family::binary ? "binary" : "fourier";
    out["order"] = seq.order();
    out["level"] = spec.level();
    out["length"] = seq.size();
    out["exponents"] = seq.exponents();
    return out;
}

inline json eigenvalues_json(const std::vector<std::complex<double>>& values) {
    json out = json::array();
    for (const auto& v : values)
        out.push_back(json{{"re", v.real()}, {"im", v.imag()}});
    return out;
}

inline std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buffer[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

inline json check_entry_json(const CheckEntry& entry) {
    json out;
    out["name"] = entry.name;
    out["anchor"] = entry.anchor;
    out["kind"] = entry.kind;
    out["status"] = entry.pass ? "pass" : "fail";
    out["measured"] = entry.measured;
    out["bound"] = entry.bound;
    out["margin"] = entry.margin;
    if (!entry.detail.empty())
        out["detail"] = entry.detail;
    return out;
}

/// Verification report. The meta block is the only place a timestamp
/// appears; the data sections are deterministic.
inline json verification_report_json(const VerificationReport& report,
                                     const std::string& suite_name) {
    json out;
    out["schema"] = 1;
    out["meta"] = json{{"generated_at", timestamp_utc()},
                       {"tool", "aperiodic verify"},
                       {"suite", suite_name}};
    out["overall"] = report.overall_pass() ? "pass" : "fail";
    json checks = json::array();
    for (const CheckEntry& entry : report.checks)
        checks.push_back(check_entry_json(entry));
    out["checks"] = std::move(checks);
    return out;
}

/// Two-column whitespace-separated plot files.
inline std::string two_column_data(const std::vector<std::pair<double, double>>& rows) {
    std::string out;
    for (const auto& [x, y] : rows) {
        out += format_double(x);
        out += ' ';
        out += format_double(y);
        out += '\n';
    }
    return out;
}

/// Words as JSON arrays of "A0"-style tokens.
inline json word_json(const Word& w) {
    json out = json::array();
    for (const Letter& l : w.letters())
        out.push_back(format_letter(l));
    return out;
}

inline Word word_from_json(const json& tokens, Alphabet alphabet) {
    std::string text;
    for (const auto& token : tokens) {
        if (!text.empty())
            text += ' ';
        text += token.get<std::string>();
    }
    return parse_word(text, alphabet);
}

inline json spectral_report_json(const SpectralReport& report,
                                 const json& input_block, int grid_points,
                                 std::size_t max_lag) {
    json doc;
    doc["schema"] = 1;
    doc["meta"] = json{{"generated_at", timestamp_utc()},
                       {"tool", "aperiodic spectrum"}};
    doc["input"] = input_block;
    doc["N"] = report.n_terms;
    doc["grid"] = grid_points;
    doc["max_lag"] = max_lag;
    doc["transform_convention"] = "x_j = exp(+2*pi*i*j/M)";
    doc["sup"] = json{{"abs", report.sup_abs},
                      {"argmax", report.argmax},
                      {"root_n_constant", report.root_n_constant}};
    json root_n = json::array();
    for (const auto& [w, c] : report.root_n_profile)
        root_n.push_back(json{{"N", w}, {"C", c}});
    doc["root_n"] = std::move(root_n);
    json eta = json::array();
    for (std::size_t lag = 0; lag < report.autocorrelation_values.size(); ++lag) {
        const std::complex<double>& v = report.autocorrelation_values[lag];
        eta.push_back(json{{"lag", lag},
                           {"re", v.real()},
                           {"im", v.imag()},
                           {"abs", std::abs(v)}});
    }
    doc["autocorrelation"] = std::move(eta);
    doc["periodogram_max"] = json{{"value", report.periodogram_max},
                                  {"argmax", report.periodogram_argmax}};
    doc["periodogram"] = report.periodogram_values;
    json verdicts = json::array();
    for (const BoundVerdict& v : report.bound_verdicts)
        verdicts.push_back(json{{"name", v.name},
                                {"status", v.pass ? "pass" : "fail"},
                                {"measured", v.measured},
                                {"bound", v.bound},
                                {"margin", v.margin}});
    doc["bound_verdicts"] = std::move(verdicts);
    doc["balance"] = report.balance;
    return doc;
}

/// periodogram.dat (angle vs intensity), autocorr.dat (lag vs |eta|), and
/// supnorm.dat (window vs root-N constant) under `directory`.
inline void write_plot_data(const SpectralReport& report, int grid_points,
                            const std::filesystem::path& directory) {
    std::vector<std::pair<double, double>> rows;
    rows.reserve(report.periodogram_values.size());
    for (std::size_t j = 0; j < report.periodogram_values.size(); ++j)
        rows.emplace_back(2.0 * std::numbers::pi * static_cast<double>(j) /
                              static_cast<double>(grid_points),
                          report.periodogram_values[j]);
    atomic_write(directory / "periodogram.dat", two_column_data(rows));

    rows.clear();
    for (std::size_t lag = 0; lag < report.autocorrelation_values.size(); ++lag)
        rows.emplace_back(static_cast<double>(lag),
                          std::abs(report.autocorrelation_values[lag]));
    atomic_write(directory / "autocorr.dat", two_column_data(rows));

    rows.clear();
    for (const auto& [w, c] : report.root_n_profile)
        rows.emplace_back(static_cast<double>(w), c);
    atomic_write(directory / "supnorm.dat", two_column_data(rows));
}

} // namespace aperiodic::io
