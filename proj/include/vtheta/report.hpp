#ifndef VTHETA_REPORT_HPP
#define VTHETA_REPORT_HPP

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vtheta/rational.hpp"
#include "vtheta/sl2.hpp"

namespace vtheta {

/* "a+bi" formatting used by the CLI flags, CSV cells and JSON payloads. */
inline std::string complex_str(Complex c)
{
    std::ostringstream os;
    os.precision(17);
    os << c.real();
    if (c.imag() >= 0 || std::isnan(c.imag())) os << "+";
    os << c.imag() << "i";
    return os.str();
}

inline Complex parse_complex(const std::string& text)
{
    // forms: "1.5", "2i", "1+2i", "-0.5-0.25i", "0+1.0i"
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("parse_complex: empty string");
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split = i;
    }
    auto num = [](const std::string& t) -> double {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        std::size_t used = 0;
        const double v = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument("parse_complex: bad number '" + t + "'");
        return v;
    };
    if (s.back() == 'i' || s.back() == 'I') {
        const std::string body = s.substr(0, s.size() - 1);
        if (split == std::string::npos) return Complex(0.0, num(body));
        return Complex(num(body.substr(0, split)), num(body.substr(split)));
    }
    if (split != std::string::npos && (s.find('i') != std::string::npos))
        throw std::invalid_argument("parse_complex: malformed '" + text + "'");
    return Complex(num(s), 0.0);
}

/* One verification record: the group element, the parameters, both sides,
 * and the residuals (including the rerun at doubled depth). */
struct TransformReport {
    std::string check;
    SL2Matrix gamma = kIdentity;
    int j = 0;
    std::string v = "-";
    Complex u{0, 0};
    Complex w{0, 0};
    Complex tau{0, 1};
    Complex z{0, 0};
    int depth = 0;
    Complex lhs{0, 0};
    Complex rhs{0, 0};
    double abs_err = 0.0;
    double rel_err = 0.0;
    double depth_doubled_err = 0.0;
    double internal_err = 0.0;  // extra cross-check when a verifier has one

    void finalize()
    {
        abs_err = std::abs(lhs - rhs);
        const double scale = std::max(std::abs(lhs), std::abs(rhs));
        rel_err = scale > 0 ? abs_err / scale : 0.0;
    }
};

inline nlohmann::json to_json(const TransformReport& r)
{
    nlohmann::json o;
    o["check"] = r.check;
    o["gamma"] = {r.gamma.a, r.gamma.b, r.gamma.c, r.gamma.d};
    o["j"] = r.j;
    o["v"] = r.v;
    o["u"] = complex_str(r.u);
    o["w"] = complex_str(r.w);
    o["tau"] = complex_str(r.tau);
    o["z"] = complex_str(r.z);
    o["depth"] = r.depth;
    o["lhs_re"] = r.lhs.real();
    o["lhs_im"] = r.lhs.imag();
    o["rhs_re"] = r.rhs.real();
    o["rhs_im"] = r.rhs.imag();
    o["abs_err"] = r.abs_err;
    o["rel_err"] = r.rel_err;
    o["depth_doubled_err"] = r.depth_doubled_err;
    o["internal_err"] = r.internal_err;
    return o;
}

inline TransformReport report_from_json(const nlohmann::json& o)
{
    TransformReport r;
    r.check = o.at("check").get<std::string>();
    auto g = o.at("gamma");
    r.gamma = SL2Matrix{g.at(0).get<long long>(), g.at(1).get<long long>(), g.at(2).get<long long>(),
                        g.at(3).get<long long>()};
    r.j = o.at("j").get<int>();
    r.v = o.at("v").get<std::string>();
    r.u = parse_complex(o.at("u").get<std::string>());
    r.w = parse_complex(o.at("w").get<std::string>());
    r.tau = parse_complex(o.at("tau").get<std::string>());
    r.z = parse_complex(o.at("z").get<std::string>());
    r.depth = o.at("depth").get<int>();
    r.lhs = Complex(o.at("lhs_re").get<double>(), o.at("lhs_im").get<double>());
    r.rhs = Complex(o.at("rhs_re").get<double>(), o.at("rhs_im").get<double>());
    r.abs_err = o.at("abs_err").get<double>();
    r.rel_err = o.at("rel_err").get<double>();
    r.depth_doubled_err = o.at("depth_doubled_err").get<double>();
    r.internal_err = o.value("internal_err", 0.0);
    return r;
}

/* The machine-readable result of one CLI invocation. */
struct ReportDocument {
    int schema = 1;
    std::string command;
    nlohmann::json parameters = nlohmann::json::object();
    std::vector<TransformReport> records;
    double tolerance = 1e-8;
    bool pass = true;

    void add(const TransformReport& r)
    {
        records.push_back(r);
        if (!(r.abs_err < tolerance)) pass = false;
    }
};

inline nlohmann::json to_json(const ReportDocument& d)
{
    nlohmann::json o;
    o["schema"] = d.schema;
    o["command"] = d.command;
    o["parameters"] = d.parameters;
    o["tolerance"] = d.tolerance;
    o["pass"] = d.pass;
    o["records"] = nlohmann::json::array();
    for (const auto& r : d.records) o["records"].push_back(to_json(r));
    return o;
}

inline ReportDocument document_from_json(const nlohmann::json& o)
{
    ReportDocument d;
    d.schema = o.at("schema").get<int>();
    d.command = o.at("command").get<std::string>();
    d.parameters = o.at("parameters");
    d.tolerance = o.at("tolerance").get<double>();
    d.pass = o.at("pass").get<bool>();
    for (const auto& r : o.at("records")) d.records.push_back(report_from_json(r));
    return d;
}

inline const char* kCsvHeader = "gamma,j,v,u,w,tau,z,depth,lhs_re,lhs_im,rhs_re,rhs_im,abs_err";

inline std::string csv_row(const TransformReport& r)
{
    std::ostringstream os;
    os.precision(17);
    os << '"' << r.gamma.str() << '"' << ',' << r.j << ',' << r.v << ',' << complex_str(r.u) << ','
       << complex_str(r.w) << ',' << complex_str(r.tau) << ',' << complex_str(r.z) << ',' << r.depth << ','
       << r.lhs.real() << ',' << r.lhs.imag() << ',' << r.rhs.real() << ',' << r.rhs.imag() << ','
       << r.abs_err;
    return os.str();
}

inline void write_csv(const std::string& path, const std::vector<TransformReport>& records)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    out << kCsvHeader << "\n";
    for (const auto& r : records) out << csv_row(r) << "\n";
}

inline void write_json(const std::string& path, const ReportDocument& d)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_json: cannot open " + path);
    out << to_json(d).dump(2) << "\n";
}

}  // namespace vtheta

#endif
