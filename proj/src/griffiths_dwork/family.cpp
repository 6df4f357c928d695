#include "griffiths_dwork/family.hpp"

#include <fstream>
#include <sstream>

#include "support/errors.hpp"
#include "support/int_utils.hpp"
#include "support/sha256.hpp"

namespace heights::gd {

using exactalg::RatFunc;
using exactalg::RatFuncPoly;

RatFuncPoly HypersurfaceFamily::parameter_derivative() const {
    return poly.map_coeffs<RatFunc>([](const RatFunc& c) { return c.derivative(); });
}

bool HypersurfaceFamily::depends_on_parameter() const {
    for (const auto& [m, c] : poly.terms()) {
        (void)m;
        if (!c.derivative().is_zero()) return true;
    }
    return false;
}

void HypersurfaceFamily::validate() const {
    if (static_cast<int>(var_names.size()) != nvars())
        throw UsageError("variable count does not match dimension");
    if (dim_n < 1 || dim_n % 2 == 0) throw UsageError("dimension must be odd and positive");
    if (degree_d < 3) throw UsageError("degree must be at least 3");
    if (poly.is_zero()) throw UsageError("defining polynomial is zero");
    if (poly.nvars() != nvars()) throw UsageError("polynomial arity mismatch");
    for (const auto& [m, c] : poly.terms()) {
        (void)c;
        if (m.degree() != degree_d)
            throw UsageError("defining polynomial is not homogeneous of the stated degree");
    }
    if (node && static_cast<int>(node->size()) != nvars())
        throw UsageError("node coordinate count mismatch");
}

std::string HypersurfaceFamily::canonical_text() const {
    std::ostringstream out;
    out << "vars";
    for (const auto& v : var_names) out << " " << v;
    out << "\nparam " << param << "\ndim " << dim_n << "\ndegree " << degree_d << "\npoly";
    for (const auto& [m, c] : poly.terms())
        out << " [" << m.to_string(var_names) << "]*(" << c.to_string(param) << ")";
    out << "\n";
    return out.str();
}

std::string HypersurfaceFamily::content_hash() const { return Sha256::of(canonical_text()); }

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    return out;
}

}  // namespace

HypersurfaceFamily parse_family_text(const std::string& text) {
    HypersurfaceFamily fam;
    std::string poly_text;
    bool have_vars = false, have_poly = false, have_deg = false, have_dim = false;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t colon = t.find(':');
        if (colon == std::string::npos) throw UsageError("family file line missing ':': " + t);
        std::string key = trim(t.substr(0, colon));
        std::string val = trim(t.substr(colon + 1));
        if (key == "vars") {
            fam.var_names = split_commas(val);
            have_vars = true;
        } else if (key == "param") {
            fam.param = val;
        } else if (key == "poly") {
            poly_text = val;
            have_poly = true;
        } else if (key == "degree") {
            fam.degree_d = std::stoi(val);
            have_deg = true;
        } else if (key == "dim") {
            fam.dim_n = std::stoi(val);
            have_dim = true;
        } else if (key == "node") {
            std::vector<mpq_class> pt;
            for (const auto& c : split_commas(val)) pt.push_back(mpq_from_string(c));
            fam.node = std::move(pt);
        } else {
            throw UsageError("unknown family file key: " + key);
        }
    }
    if (!have_vars || !have_poly || !have_deg || !have_dim)
        throw UsageError("family file needs vars:, poly:, degree:, dim:");
    for (const auto& v : fam.var_names)
        if (v.empty() || v == fam.param) throw UsageError("bad variable list");

    std::vector<std::string> all = fam.var_names;
    all.push_back(fam.param);
    exactalg::QMultiPoly with_param = exactalg::parse_multipoly(poly_text, all);
    fam.poly = exactalg::split_parameter(with_param);
    fam.validate();
    return fam;
}

HypersurfaceFamily load_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open family file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_family_text(ss.str());
}

}  // namespace heights::gd
