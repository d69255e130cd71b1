#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "cusp/blowup.hpp"

namespace cusp {

namespace {

Step::Kind parse_kind(const std::string& s) {
    if (s == "chart") return Step::Kind::chart;
    if (s == "fix_s") return Step::Kind::fix_s;
    if (s == "blowup") return Step::Kind::blowup;
    if (s == "translate") return Step::Kind::translate;
    throw std::invalid_argument("unknown step '" + s + "'");
}

void write_poly(std::ostream& os, const char* tag, const ExactPoly& p) {
    for (const auto& [k, c] : p.terms()) {
        os << tag << ' ' << k.first << ' ' << k.second << ' ' << to_string(c.c0()) << ' ' << to_string(c.c1()) << '\n';
    }
}

std::string fmt_approx(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string root_str(const RealRoot& r) {
    return r.exact ? to_string(r.value) : "~" + fmt_approx(r.approx);
}

}  // namespace

void write_state(std::ostream& os, const BlowupState& st) {
    os << "# blow-up state: step <kind> <value> <cancelled> <curve_power>; <P|Q|C> <i> <j> <c0> <c1> for (c0 + c1 s) x^i y^j\n";
    for (const auto& s : st.log) {
        os << "step " << to_string(s.kind) << ' ' << to_string(s.value) << ' ' << s.cancelled << ' ' << s.curve_power
           << '\n';
    }
    write_poly(os, "P", st.P);
    write_poly(os, "Q", st.Q);
    write_poly(os, "C", st.curve);
    os << "end\n";
}

BlowupState read_state(std::istream& is) {
    BlowupState st;
    std::string line;
    bool ended = false;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        try {
            if (tag == "end") {
                ended = true;
                break;
            }
            if (tag == "step") {
                std::string kind, value;
                Step s;
                if (!(ls >> kind >> value >> s.cancelled >> s.curve_power)) throw std::invalid_argument("short step line");
                s.kind = parse_kind(kind);
                s.value = parse_rational(value);
                st.log.push_back(s);
            } else if (tag == "P" || tag == "Q" || tag == "C") {
                int i = 0, j = 0;
                std::string c0, c1;
                if (!(ls >> i >> j >> c0 >> c1)) throw std::invalid_argument("short term line");
                ExactPoly& p = tag == "P" ? st.P : tag == "Q" ? st.Q : st.curve;
                p.add_term(i, j, CoeffAffineT(parse_rational(c0), parse_rational(c1)));
            } else {
                throw std::invalid_argument("unknown tag '" + tag + "'");
            }
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("read_state: line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!ended) throw std::invalid_argument("read_state: missing 'end'");
    return st;
}

std::string state_to_string(const BlowupState& st) {
    std::ostringstream os;
    write_state(os, st);
    return os.str();
}

std::string report_to_string(const BlowupReport& rep) {
    std::ostringstream os;
    os << "mode " << to_string(rep.mode) << '\n';
    os << "curve " << to_string(rep.curve) << '\n';
    os << "blowups " << rep.blowups << '\n';
    os << "contact_order " << rep.contact_order << '\n';
    for (const auto& [k, a] : rep.translations) os << "translation " << k << ' ' << to_string(a) << '\n';
    os << "rhythm " << (rep.rhythm ? std::to_string(*rep.rhythm) : "none") << '\n';
    os << "final_point " << to_string(rep.final_point) << '\n';
    os << "abscissa " << rep.abscissa.str() << '\n';
    for (const auto& s : rep.stages) {
        os << "stage " << s.blowup << " cancelled " << s.cancelled << " curve_power " << s.curve_power << " critical";
        for (const auto& r : s.critical_points) os << ' ' << root_str(r);
        os << " tracked " << to_string(s.tracked) << " curve";
        for (const auto& e : s.curve.exact) os << ' ' << e.str();
        for (const auto& r : s.curve.algebraic) os << ' ' << root_str(r);
        os << (s.separated ? " separated" : " touching");
        if (s.translation) os << " translate " << to_string(*s.translation);
        os << '\n';
    }
    return os.str();
}

}  // namespace cusp
