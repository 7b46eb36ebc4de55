#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "vtheta/report.hpp"

using namespace vtheta;

TEST_CASE("complex formatting round-trips")
{
    for (Complex c : {Complex(1.5, 0), Complex(0, 2), Complex(1, 2), Complex(-0.5, -0.25),
                      Complex(0.1234567890123456, -9.87654321e-7), Complex(0, -1)}) {
        const Complex back = parse_complex(complex_str(c));
        CHECK(back.real() == c.real());
        CHECK(back.imag() == c.imag());
    }
    CHECK(parse_complex("2i") == Complex(0, 2));
    CHECK(parse_complex("-i") == Complex(0, -1));
    CHECK(parse_complex("0+1.0i") == Complex(0, 1));
    CHECK(parse_complex("1.5") == Complex(1.5, 0));
    CHECK_THROWS_AS(parse_complex("banana"), std::invalid_argument);
}

TEST_CASE("rational formatting")
{
    CHECK(rational_str(Rational(1, 24)) == "1/24");
    CHECK(rational_str(Rational(-3, 2)) == "-3/2");
    CHECK(rational_str(Rational(5)) == "5");
    CHECK(parse_rational("1/24") == Rational(1, 24));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK_THROWS_AS(parse_rational("x/2"), std::invalid_argument);
}

namespace {

TransformReport sample_report()
{
    TransformReport r;
    r.check = "theorem1";
    r.gamma = SL2Matrix{2, 1, 1, 1};
    r.j = 3;
    r.v = "alpha";
    r.u = Complex(0.3, 0.1);
    r.w = Complex(0.2, 0);
    r.tau = Complex(0.031200000000000013, 0.95);
    r.z = Complex(0, 0);
    r.depth = 12;
    r.lhs = Complex(0.12345678901234567, -0.91866524371234561);
    r.rhs = Complex(0.12345678901234568, -0.91866524371234555);
    r.finalize();
    r.depth_doubled_err = 3.0814879110195774e-17;
    r.internal_err = 1.1102230246251565e-16;
    return r;
}

bool reports_identical(const TransformReport& a, const TransformReport& b)
{
    return a.check == b.check && a.gamma == b.gamma && a.j == b.j && a.v == b.v && a.u == b.u && a.w == b.w &&
           a.tau == b.tau && a.z == b.z && a.depth == b.depth && a.lhs == b.lhs && a.rhs == b.rhs &&
           a.abs_err == b.abs_err && a.rel_err == b.rel_err && a.depth_doubled_err == b.depth_doubled_err &&
           a.internal_err == b.internal_err;
}

}  // namespace

TEST_CASE("transform reports round-trip through JSON bit-identically")
{
    const TransformReport r = sample_report();
    const nlohmann::json j = to_json(r);
    const TransformReport back = report_from_json(nlohmann::json::parse(j.dump()));
    CHECK(reports_identical(r, back));
}

TEST_CASE("documents round-trip through files")
{
    ReportDocument doc;
    doc.command = "verify theorem1";
    doc.parameters = {{"depth", 12}, {"seed", 1}};
    doc.tolerance = 1e-8;
    doc.add(sample_report());
    REQUIRE(doc.pass);

    const std::string path = (std::filesystem::temp_directory_path() / "vtheta_report_test.json").string();
    write_json(path, doc);
    std::ifstream in(path);
    nlohmann::json parsed;
    in >> parsed;
    const ReportDocument back = document_from_json(parsed);
    CHECK(back.schema == 1);
    CHECK(back.command == doc.command);
    CHECK(back.tolerance == doc.tolerance);
    CHECK(back.pass == doc.pass);
    REQUIRE(back.records.size() == 1);
    CHECK(reports_identical(back.records[0], doc.records[0]));
    std::filesystem::remove(path);
}

TEST_CASE("pass flag reflects the tolerance")
{
    ReportDocument doc;
    doc.tolerance = 1e-12;
    TransformReport bad = sample_report();
    bad.lhs = Complex(1, 0);
    bad.rhs = Complex(1.5, 0);
    bad.finalize();
    doc.add(bad);
    CHECK(!doc.pass);
}

TEST_CASE("csv header and rows")
{
    CHECK(std::string(kCsvHeader) == "gamma,j,v,u,w,tau,z,depth,lhs_re,lhs_im,rhs_re,rhs_im,abs_err");
    const std::string row = csv_row(sample_report());
    CHECK(row.find("\"2,1,1,1\"") == 0);
    CHECK(row.find("alpha") != std::string::npos);
    const std::string path = (std::filesystem::temp_directory_path() / "vtheta_rows.csv").string();
    write_csv(path, {sample_report(), sample_report()});
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == kCsvHeader);
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 2);
    std::filesystem::remove(path);
}
