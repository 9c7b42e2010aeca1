#pragma once

// Line-oriented key=value text format for potential specs.
//
//   type = trig | grid | zero | constant
//   term = cos:K:AMP        (trig; repeated)
//   term = sin:K:AMP
//   value = V               (constant; optional additive offset for trig)
//   sample = X,V            (grid; repeated)
//
// Blank lines and lines starting with '#' are ignored. Parsing is
// locale-independent (std::from_chars, decimal point only); dumping uses
// shortest round-trip formatting so parse(dump(spec)) == spec exactly.

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "dirspec/potential.hpp"

namespace dirspec {

struct PotentialParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

[[noreturn]] inline void parse_fail(std::size_t line_no, const std::string& why) {
    throw PotentialParseError("potential spec line " + std::to_string(line_no) + ": " + why);
}

inline double parse_double(std::string_view tok, std::size_t line_no) {
    tok = trim(tok);
    double v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        parse_fail(line_no, "bad number '" + std::string(tok) + "'");
    }
    return v;
}

inline int parse_int(std::string_view tok, std::size_t line_no) {
    tok = trim(tok);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        parse_fail(line_no, "bad integer '" + std::string(tok) + "'");
    }
    return v;
}

inline std::string format_shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace detail

inline PotentialSpec parse_potential(std::string_view text) {
    std::optional<PotentialKind> kind;
    std::vector<TrigTerm> terms;
    std::vector<GridSample> samples;
    std::optional<double> value;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        line = detail::trim(line);
        if (line.empty() || line.front() == '#') continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) detail::parse_fail(line_no, "expected key = value");
        const std::string_view key = detail::trim(line.substr(0, eq));
        const std::string_view val = detail::trim(line.substr(eq + 1));

        if (key == "type") {
            if (kind) detail::parse_fail(line_no, "duplicate type");
            if (val == "zero") kind = PotentialKind::zero;
            else if (val == "constant") kind = PotentialKind::constant;
            else if (val == "trig") kind = PotentialKind::trig;
            else if (val == "grid") kind = PotentialKind::grid;
            else detail::parse_fail(line_no, "unknown type '" + std::string(val) + "'");
        } else if (key == "term") {
            const std::size_t c1 = val.find(':');
            const std::size_t c2 = c1 == std::string_view::npos ? std::string_view::npos
                                                                : val.find(':', c1 + 1);
            if (c2 == std::string_view::npos) {
                detail::parse_fail(line_no, "term must be cos:K:AMP or sin:K:AMP");
            }
            const std::string_view basis = detail::trim(val.substr(0, c1));
            TrigTerm t;
            if (basis == "cos") t.basis = TrigBasis::cos;
            else if (basis == "sin") t.basis = TrigBasis::sin;
            else detail::parse_fail(line_no, "term basis must be cos or sin");
            t.harmonic = detail::parse_int(val.substr(c1 + 1, c2 - c1 - 1), line_no);
            t.amplitude = detail::parse_double(val.substr(c2 + 1), line_no);
            terms.push_back(t);
        } else if (key == "value") {
            if (value) detail::parse_fail(line_no, "duplicate value");
            value = detail::parse_double(val, line_no);
        } else if (key == "sample") {
            const std::size_t comma = val.find(',');
            if (comma == std::string_view::npos) detail::parse_fail(line_no, "sample must be X,V");
            GridSample g;
            g.x = detail::parse_double(val.substr(0, comma), line_no);
            g.value = detail::parse_double(val.substr(comma + 1), line_no);
            samples.push_back(g);
        } else {
            detail::parse_fail(line_no, "unknown key '" + std::string(key) + "'");
        }
    }

    if (!kind) throw PotentialParseError("potential spec: missing 'type' line");
    const auto forbid = [&](bool cond, const char* what) {
        if (cond) throw PotentialParseError(std::string("potential spec: ") + what +
                                            " not allowed for this type");
    };
    PotentialSpec spec;
    switch (*kind) {
        case PotentialKind::zero:
            forbid(!terms.empty(), "term");
            forbid(!samples.empty(), "sample");
            forbid(value.has_value(), "value");
            spec = PotentialSpec::zero();
            break;
        case PotentialKind::constant:
            forbid(!terms.empty(), "term");
            forbid(!samples.empty(), "sample");
            if (!value) throw PotentialParseError("potential spec: constant needs a value line");
            spec = PotentialSpec::constant(*value);
            break;
        case PotentialKind::trig:
            forbid(!samples.empty(), "sample");
            spec = PotentialSpec::trig(std::move(terms), value.value_or(0.0));
            break;
        case PotentialKind::grid:
            forbid(!terms.empty(), "term");
            forbid(value.has_value(), "value");
            spec = PotentialSpec::grid(std::move(samples));
            break;
    }
    validate_spec(spec);
    return spec;
}

inline PotentialSpec parse_potential_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PotentialParseError("cannot open potential file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_potential(buf.str());
    } catch (const PotentialParseError& e) {
        throw PotentialParseError(path + ": " + e.what());
    }
}

// Inverse of parse_potential; stable field order, shortest round-trip floats.
inline std::string dump_potential(const PotentialSpec& spec) {
    validate_spec(spec);
    std::string out;
    switch (spec.kind) {
        case PotentialKind::zero:
            out += "type = zero\n";
            break;
        case PotentialKind::constant:
            out += "type = constant\n";
            out += "value = " + detail::format_shortest(spec.constant_value) + "\n";
            break;
        case PotentialKind::trig:
            out += "type = trig\n";
            if (spec.constant_value != 0.0) {
                out += "value = " + detail::format_shortest(spec.constant_value) + "\n";
            }
            for (const auto& t : spec.trig_terms) {
                out += "term = ";
                out += (t.basis == TrigBasis::cos ? "cos:" : "sin:");
                out += std::to_string(t.harmonic) + ":" + detail::format_shortest(t.amplitude);
                out += "\n";
            }
            break;
        case PotentialKind::grid:
            out += "type = grid\n";
            for (const auto& g : spec.grid_samples) {
                out += "sample = " + detail::format_shortest(g.x) + "," +
                       detail::format_shortest(g.value) + "\n";
            }
            break;
    }
    return out;
}

}  // namespace dirspec
