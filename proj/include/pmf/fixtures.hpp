#pragma once

#include <json.hpp>

#include <fstream>
#include <string>

#include "pmf/eigenforms.hpp"
#include "pmf/modmatrix.hpp"

namespace pmf {

using Json = nlohmann::ordered_json;

// Integers travel as decimal strings: coefficient sizes routinely exceed any
// machine word.

inline Json scalar_to_json(const PadicScalar& s) {
    Json j;
    if (s.is_exact_zero()) {
        j["zero"] = true;
    } else if (s.is_zero()) {
        j["zero"] = true;
        j["floor"] = s.valuation_floor();
    } else {
        j["v"] = s.valuation_floor();
        j["u"] = s.unit_part().get_str();
        j["N"] = s.rel_prec();
    }
    return j;
}

inline PadicScalar scalar_from_json(const Json& j, long p) {
    if (j.contains("zero") && j["zero"].get<bool>()) {
        if (j.contains("floor")) return PadicScalar::approximate_zero(p, j["floor"].get<long>());
        return PadicScalar::exact_zero(p);
    }
    long v = j["v"].get<long>();
    int n = j["N"].get<int>();
    Int u(j["u"].get<std::string>());
    PadicScalar unit = PadicScalar::from_residue(u, PrimePower(p, n));
    PadicScalar pv = PadicScalar::from_rational(rat_pow(Rat(p), v), p, n);
    return unit * pv;
}

inline Json eigenform_to_json(const EigenformRecord& f) {
    Json j;
    j["p"] = f.p;
    j["N"] = f.N;
    j["weight"] = f.weight_k;
    j["prec"] = f.prec;
    j["level_exponent"] = f.level_exponent;
    j["rational"] = f.rational;
    Json coeffs = Json::array();
    for (const auto& c : f.coeffs) coeffs.push_back(c.get_str());
    j["coeffs"] = std::move(coeffs);
    if (f.rational) {
        Json ce = Json::array();
        for (const auto& c : f.coeffs_exact) ce.push_back(c.get_str());
        j["coeffs_exact"] = std::move(ce);
    }
    Json ev;
    for (const auto& [ell, a] : f.eigenvalues) ev[std::to_string(ell)] = a.get_str();
    j["eigenvalues"] = std::move(ev);
    j["ordinary"] = f.ordinary;
    if (f.ordinary) j["alpha"] = scalar_to_json(f.alpha);
    return j;
}

inline EigenformRecord eigenform_from_json(const Json& j) {
    EigenformRecord f;
    f.p = j["p"].get<long>();
    f.N = j["N"].get<int>();
    f.weight_k = j["weight"].get<long>();
    f.prec = j["prec"].get<long>();
    f.level_exponent = j["level_exponent"].get<int>();
    f.rational = j["rational"].get<bool>();
    for (const auto& c : j["coeffs"]) f.coeffs.emplace_back(c.get<std::string>());
    if (f.rational)
        for (const auto& c : j["coeffs_exact"]) f.coeffs_exact.emplace_back(c.get<std::string>());
    for (const auto& [key, val] : j["eigenvalues"].items())
        f.eigenvalues[std::stol(key)] = Int(val.get<std::string>());
    if (f.rational)
        for (const auto& [ell, a] : f.eigenvalues)
            f.eigenvalues_exact[ell] = f.coeffs_exact.at(static_cast<size_t>(ell));
    f.ordinary = j["ordinary"].get<bool>();
    if (f.ordinary) f.alpha = scalar_from_json(j["alpha"], f.p);
    return f;
}

inline bool eigenform_equal(const EigenformRecord& a, const EigenformRecord& b) {
    return a.p == b.p && a.N == b.N && a.weight_k == b.weight_k && a.prec == b.prec &&
           a.level_exponent == b.level_exponent && a.rational == b.rational &&
           a.coeffs == b.coeffs && a.coeffs_exact == b.coeffs_exact &&
           a.eigenvalues == b.eigenvalues && a.ordinary == b.ordinary &&
           (!a.ordinary || a.alpha.identical(b.alpha));
}

// Row-major, canonical residues as decimal strings.
inline Json matrix_to_json(const ModMatrix& m) {
    Json j;
    j["p"] = m.ring().p();
    j["N"] = m.ring().exponent();
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    Json e = Json::array();
    for (long i = 0; i < m.rows(); ++i)
        for (long c = 0; c < m.cols(); ++c) e.push_back(m.at(i, c).get_str());
    j["entries"] = std::move(e);
    return j;
}

inline ModMatrix matrix_from_json(const Json& j) {
    PrimePower pp(j["p"].get<long>(), j["N"].get<int>());
    ModMatrix m(pp, j["rows"].get<long>(), j["cols"].get<long>());
    const auto& e = j["entries"];
    size_t t = 0;
    for (long i = 0; i < m.rows(); ++i)
        for (long c = 0; c < m.cols(); ++c) m.set(i, c, Int(e[t++].get<std::string>()));
    return m;
}

inline void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw bad_input("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw bad_input("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

}  // namespace pmf
