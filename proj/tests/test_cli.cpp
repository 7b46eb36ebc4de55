#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef VTHETA_CLI_PATH
#error "VTHETA_CLI_PATH must be defined"
#endif

namespace {

namespace fs = std::filesystem;

int run(const std::string& args, const std::string& out_file = "/dev/null")
{
    const std::string cmd = std::string(VTHETA_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("unknown subcommands and checks exit with 2")
{
    CHECK(run("bogus") == 2);
    CHECK(run("verify bogus") == 2);
    CHECK(run("table bogus") == 2);
    CHECK(run("verify theorem1 --gamma 1,0,0,2") == 2);  // det != 1
}

TEST_CASE("tables print the modular data")
{
    const fs::path out = fs::temp_directory_path() / "vtheta_cli_table.txt";
    REQUIRE(run("table smatrix", out.string()) == 0);
    const std::string s = slurp(out);
    CHECK(s.find("0.500000+0.000000i") != std::string::npos);
    CHECK(s.find("0.000000-0.500000i") != std::string::npos);  // the (1,1) entry -i/2
    REQUIRE(run("table tmatrix", out.string()) == 0);
    REQUIRE(run("table agamma --gamma 2,1,1,1", out.string()) == 0);
    CHECK(slurp(out).find("word:") != std::string::npos);
    CHECK(run("table agamma") == 2);  // missing --gamma
    fs::remove(out);
}

TEST_CASE("a passing verification exits 0")
{
    CHECK(run("verify theorem1 --gamma 0,-1,1,0 --module 1 --v alpha --u 0.2 --tau 0.0312+0.95i --depth 10") == 0);
    CHECK(run("verify section4 --tau 0.3+1.1i --z 0.23+0.11i --depth 10") == 0);
    CHECK(run("verify mode-sum") == 0);
    CHECK(run("verify counting") == 0);
    CHECK(run("verify schur") == 0);
    CHECK(run("verify lemma-c --seed 5") == 0);
}

TEST_CASE("json reports are deterministic for identical argv")
{
    const fs::path a = fs::temp_directory_path() / "vtheta_det_a.json";
    const fs::path b = fs::temp_directory_path() / "vtheta_det_b.json";
    const std::string args = "verify lemma-c --seed 42 --json ";
    REQUIRE(run(args + a.string()) == 0);
    REQUIRE(run(args + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
    REQUIRE(!slurp(a).empty());
    fs::remove(a);
    fs::remove(b);
}

TEST_CASE("csv output carries the fixed header")
{
    const fs::path out = fs::temp_directory_path() / "vtheta_cli_rows.csv";
    REQUIRE(run("verify section4 --tau 0+1.1i --z 0.2+0.1i --depth 8 --csv " + out.string()) == 0);
    std::ifstream in(out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "gamma,j,v,u,w,tau,z,depth,lhs_re,lhs_im,rhs_re,rhs_im,abs_err");
    fs::remove(out);
}

TEST_CASE("impossible tolerances exit 1")
{
    CHECK(run("verify section4 --tau 0+1.1i --z 0.2+0.1i --depth 8 --tol 1e-30") == 1);
}
