// End-to-end checks of the command line driver and its exit-code contract.
// Needs FOLIA_BIN (and FOLIA_SRC for the shipped data); ctest sets both.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int failures = 0;

std::string bin() {
    const char* b = std::getenv("FOLIA_BIN");
    return b ? b : "./folia";
}

fs::path src_root() {
    const char* s = std::getenv("FOLIA_SRC");
    return s ? fs::path(s) : fs::current_path();
}

int run(const std::string& cmd) {
    int rc = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
}

void expect(bool ok, const std::string& what) {
    if (ok) {
        std::cout << "ok: " << what << "\n";
    } else {
        std::cout << "FAIL: " << what << "\n";
        ++failures;
    }
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

int main() {
    fs::path tmp = fs::temp_directory_path() / "folia_cli_test";
    fs::remove_all(tmp);
    fs::create_directories(tmp);
    const std::string out = " --out " + (tmp / "out").string();

    expect(run(bin() + " reduce --form \"2*y*dy - 3*x^2*dx\" --name cusp" + out) == 0,
           "reduce on the cusp exits 0");
    expect(fs::exists(tmp / "out" / "cusp.divisor.json"), "divisor JSON written");
    expect(fs::exists(tmp / "out" / "cusp.dot"), "DOT written");
    expect(fs::exists(tmp / "out" / "cusp.report.txt"), "report written");

    expect(run(bin() + " reduce --form \"x*dy - y*dx\" --name radial" + out) == 0,
           "reduce on the radial form exits 0");

    expect(run(bin() + " reduce --form \"x*dy + (\"" + out) == 1,
           "malformed input exits 1");
    expect(run(bin() + " reduce --form \"x*dx - x*dx\"" + out) == 1, "zero form exits 1");

    expect(run(bin() + " reduce --form \"(y^3 - 8*x^3)*dx + 3*x*y^2*dy\"" + out) == 2,
           "unresolved cubic exits 2 (UNDETERMINED)");

    expect(run(bin() + " reduce --form \"2*y*dy - 3*x^2*dx\" --max-blowups 1" + out) == 3,
           "blow-up budget exits 3 (DEPTH_LIMIT)");

    expect(run(bin() + " moduli --form \"2*y*dy - 3*x^2*dx\" --name cuspm" + out) == 0,
           "moduli on the cusp exits 0");
    expect(fs::exists(tmp / "out" / "cuspm.skeleton.json"), "skeleton JSON written");

    expect(run(bin() + " moduli --divisor " + (tmp / "out" / "cusp.divisor.json").string() +
               " --name fromdiv" + out) == 0,
           "moduli accepts a divisor file");

    expect(run(bin() + " moduli --form \"-y^2*dx + x*dy\"" + out) == 5,
           "saddle-node input exits 5");

    {
        std::ofstream bad(tmp / "truncated.json");
        bad << "{\"fmv\": 1, \"compo";
    }
    expect(run(bin() + " moduli --divisor " + (tmp / "truncated.json").string() + out) == 1,
           "truncated divisor JSON exits 1");

    fs::path scenarios = src_root() / "data" / "scenarios";
    expect(run(bin() + " jetlab --scenario " +
               (scenarios / "euler_single_edge.json").string() + out) == 0,
           "euler scenario exits 0");
    expect(run(bin() + " jetlab --scenario " +
               (scenarios / "resonant_pair.json").string() + out) == 0,
           "resonant scenario exits 0");
    expect(run(bin() + " jetlab --scenario " +
               (scenarios / "wrong_sign_control.json").string() + out) == 6,
           "corrupted scenario exits 6");
    expect(run(bin() + " jetlab --scenario " + (tmp / "truncated.json").string() + out) == 1,
           "bad scenario JSON exits 1");

    fs::path corpus = src_root() / "corpus";
    expect(run(bin() + " corpus --dir " + corpus.string() + " --out " +
               (tmp / "c1").string()) == 0,
           "corpus run exits 0");
    expect(run(bin() + " corpus --dir " + corpus.string() + " --out " +
               (tmp / "c2").string()) == 0,
           "second corpus run exits 0");

    // byte-identical artifacts across runs
    bool identical = true;
    size_t compared = 0;
    for (const auto& e : fs::directory_iterator(tmp / "c1")) {
        fs::path other = tmp / "c2" / e.path().filename();
        if (!fs::exists(other) || slurp(e.path()) != slurp(other)) {
            identical = false;
            std::cout << "  differs: " << e.path().filename() << "\n";
        }
        ++compared;
    }
    expect(identical && compared > 0, "corpus artifacts are byte-identical across runs");

    if (failures) {
        std::cout << failures << " cli check(s) failed\n";
        return 1;
    }
    std::cout << "all cli checks passed\n";
    return 0;
}
