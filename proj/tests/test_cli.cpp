#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <fstream>
#include <sstream>
#include <string>

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(GLAT_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/gaborlat_cli_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("exit codes follow the documented contract") {
    CHECK(run("--help") == 0);
    CHECK(run("bogus-subcommand") == 1);
    CHECK(run("bounds --name Z^2 --density 2") == 0);
    // Density 1 admits no frame: numeric failure.
    CHECK(run("bounds --name Z^2 --density 1") == 2);
    // Unknown catalog name: usage error.
    CHECK(run("bounds --name Nope --density 2") == 1);
    // Tolerance outside the documented range: usage error.
    CHECK(run("bounds --name Z^2 --density 2 --tol 1e-20") == 1);
    // Resource cap surfaces as exit 3 (radius far beyond the point cap).
    CHECK(run("bounds --name Z^2 --density 2 --method gram --radius 4000") == 3);
}

TEST_CASE("bounds CSV carries method tags and error bounds") {
    TempFile out("bounds.csv");
    REQUIRE(run("bounds --name hexagonal --density 2 --method all --out " + out.path) == 0);
    const std::string csv = slurp(out.path);
    CHECK(csv.find("method,A,B,ratio,error_bound,heuristic") != std::string::npos);
    CHECK(csv.find("janssen-exact,1.99576104") != std::string::npos);
    CHECK(csv.find("gram-spectral") != std::string::npos);
    CHECK(csv.find("condition-A-upper") != std::string::npos);
    CHECK(csv.find("energy-lower") != std::string::npos);
}

TEST_CASE("info reports deep holes for 2-D lattices") {
    TempFile out("info.csv");
    REQUIRE(run("info --name Z^2 --density 1 --out " + out.path) == 0);
    const std::string csv = slurp(out.path);
    CHECK(csv.find("density,1") != std::string::npos);
    CHECK(csv.find("covering_radius,0.7071067811865") != std::string::npos);
    CHECK(csv.find("deep_hole,") != std::string::npos);
}

TEST_CASE("scan emits a landscape with a hexagonal argopt") {
    TempFile out("scan.csv");
    TempFile png("scan.png");
    REQUIRE(run("scan --density 2 --objective paving --grid 24 --out " + out.path +
                " --png " + png.path) == 0);
    const std::string csv = slurp(out.path);
    CHECK(csv.find("argopt,0.5,0.86602540") != std::string::npos);
    std::ifstream p(png.path, std::ios::binary);
    unsigned char sig[4] = {0, 0, 0, 0};
    p.read(reinterpret_cast<char*>(sig), 4);
    CHECK(sig[1] == 'P');
}

TEST_CASE("ofdm scenario file drives the simulation") {
    TempFile scen("scen.json");
    {
        std::ofstream s(scen.path);
        s << R"({"lattice": {"dim": 2, "basis": [1.4142135623730951, 0, 0, )"
          << R"(1.4142135623730951], "name": "rect"}, "K": 3, )"
          << R"("taps": [{"delay": 0.0, "doppler": 0.0, "gain_re": 1.0}]})";
    }
    TempFile out("ofdm.csv");
    REQUIRE(run("ofdm --scenario " + scen.path + " --out " + out.path) == 0);
    const std::string csv = slurp(out.path);
    CHECK(csv.find("mu_k,mu_l,nu_k,nu_l,re,im") != std::string::npos);
    CHECK(csv.find("summary,sir_db,") != std::string::npos);
}

TEST_CASE("byte-identical CSV across repeated single-threaded runs") {
    TempFile a("rep_a.csv");
    TempFile b("rep_b.csv");
    const std::string args = "scan --density 2 --objective paving --grid 16 --threads 1 --out ";
    REQUIRE(run(args + a.path) == 0);
    REQUIRE(run(args + b.path) == 0);
    CHECK(slurp(a.path) == slurp(b.path));
    CHECK(!slurp(a.path).empty());
}

TEST_CASE("verify suite passes on this build") {
    CHECK(run("verify --tol 1e-9") == 0);
}

TEST_CASE("leech_rederive matches the shipped table") {
    const std::string cmd = std::string(LEECH_BIN) + " 4 >/dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
}
