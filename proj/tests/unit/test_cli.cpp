#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
    int status = -1;
    std::string out;
    std::string err;
};

const fs::path& scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("cr-sharp-cli-" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Run run(const std::string& args, const std::string& env = "") {
    const fs::path out = scratch() / "stdout", err = scratch() / "stderr";
    const std::string cmd =
        env + " '" CR_SHARP_BIN "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int raw = std::system(cmd.c_str());
    Run r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

json run_json(const std::string& args, int expected_status = 0) {
    const Run r = run(args);
    INFO(args);
    INFO(r.err);
    REQUIRE(r.status == expected_status);
    return json::parse(r.out);
}

const json& row(const json& doc, const std::string& name) {
    for (const json& c : doc["constants"])
        if (c["name"] == name) return c;
    FAIL("missing constant " << name);
    return doc;
}

}  // namespace

TEST_CASE("constants: HLS values at n=1, lambda=2 and usage errors") {
    const json all = run_json("constants --n 1 --lambda 2");
    CHECK(all["schema"] == 1);
    CHECK(all["passed"] == true);
    CHECK(std::abs(row(all, "hls_sphere")["closed_value"].get<double>() - 4.0 * std::numbers::sqrt2) < 1e-14);
    CHECK(std::abs(row(all, "hls_heisenberg")["closed_value"].get<double>() - 4.0) < 1e-14);
    for (const json& c : all["constants"]) CHECK(c["relative_gap"].get<double>() <= 1e-8);

    const json heis = run_json("constants --n 1 --lambda 2 --side heisenberg");
    CHECK(std::abs(row(heis, "hls_heisenberg")["closed_value"].get<double>() - 4.0) < 1e-14);
    for (const json& c : heis["constants"]) CHECK(c["name"].get<std::string>().find("sphere") == std::string::npos);

    CHECK(run("constants --n 1").status == 2);
    CHECK(run("constants --n 1 --lambda 4").status == 2);
    CHECK(run("constants --n 0 --lambda 1").status == 2);
    CHECK(run("constants --n 1 --lambda 2 --tol 0").status == 1);
    CHECK(run("no-such-command").status == 2);
}

TEST_CASE("eigenvalues: numeric check, the constant kernel and CSV output") {
    CHECK(run("eigenvalues --kernel power --alpha 0.5 --n 1 --jmax 6 --check-numeric").status == 0);
    CHECK(run("eigenvalues --kernel power --alpha 0.5 --n 1 --jmax 4 --check-numeric --tol 1e-300").status == 1);

    const json flat = run_json("eigenvalues --kernel power --alpha 0 --n 1 --jmax 3 --format json");
    CHECK(flat["table"].size() == 16);
    for (const json& e : flat["table"]) {
        const double expected = e["j"] == 0 && e["k"] == 0 ? 2.0 * std::numbers::pi * std::numbers::pi : 0.0;
        CHECK(std::abs(e["eigenvalue"].get<double>() - expected) < 1e-13);
    }

    const Run csv = run("eigenvalues --kernel log --n 1 --jmax 2");
    CHECK(csv.status == 0);
    CHECK(csv.out.rfind("j,k,", 0) == 0);
    CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 10);

    CHECK(run("eigenvalues --kernel power --n 1").status == 2);
    CHECK(run("eigenvalues --kernel power --alpha 1 --n 1").status == 2);
}

TEST_CASE("eigenvalues: weighted at alpha=1 equals power off the j=0 and k=0 rows") {
    const int n = 2;
    const json w = run_json("eigenvalues --kernel weighted --alpha 1 --n 2 --jmax 4 --format json");
    const json p = run_json("eigenvalues --kernel power --alpha 1 --n 2 --jmax 4 --format json");
    REQUIRE(w["table"].size() == p["table"].size());
    for (std::size_t i = 0; i < w["table"].size(); ++i) {
        const int j = w["table"][i]["j"], k = w["table"][i]["k"];
        const double ew = w["table"][i]["eigenvalue"], ep = p["table"][i]["eigenvalue"];
        CAPTURE(j);
        CAPTURE(k);
        double factor = 1.0;
        if (j == 0) factor = 1.0 - double(n - 1) / (k + n);
        else if (k == 0) factor = 1.0 - double(n - 1) / (j + n);
        CHECK(std::abs(ew - factor * ep) <= 1e-12 * std::abs(ep));
    }
}

TEST_CASE("verify: report shape and exit codes") {
    const json k = run_json("verify keyineq --n 1 --jmax 200");
    CHECK(k["schema"] == 1);
    CHECK(k["suite"] == "keyineq");
    CHECK(k["cases_failed"] == 0);
    CHECK(k["cases_total"].get<int>() > 0);
    CHECK(run("verify sobq --d 2.5").status == 2);
    CHECK(run("verify nonsense").status == 2);
    CHECK(run("verify hls --n 2 --lambda 2").status == 2);
    CHECK(run("verify multipliers --n 1 --s 2.5").status == 2);
}

TEST_CASE("maximize: seeded run, constant start and an exhausted budget") {
    const json m = run_json("maximize --n 1 --lambda 2 --seed 7");
    CHECK(m["gap"].get<double>() <= 0.01);
    CHECK(m["quotient"].get<double>() <= m["constant"].get<double>() * (1.0 + 1e-12));

    const json c = run_json("maximize --n 1 --lambda 2 --start constant");
    CHECK(c["iterations"] == 0);
    CHECK(c["converged"] == true);

    CHECK(run("maximize --n 1 --lambda 2 --max-iters 1 --threshold 1e-9").status == 1);
    CHECK(run("maximize --n 2 --lambda 2").status == 2);
    CHECK(run("maximize --n 1").status == 2);
}

TEST_CASE("com: tilted density converges and malformed input is a usage error") {
    const json c = run_json("com --density 'abs(1+0.3*z2)'");
    CHECK(c["residual"].get<double>() <= 1e-8);
    CHECK(c["delta"].get<double>() > 0.0);
    CHECK(c["delta"].get<double>() < 1.0);
    const json b = run_json("com --density peak --n 2");
    CHECK(b["residual"].get<double>() <= 1e-8);

    CHECK(run("com --density 'abs(1+z9'").status == 2);
    CHECK(run("com --density 'foo(z1)'").status == 2);
    CHECK(run("com --density '-1'").status == 2);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
    for (const char* args : {"maximize --n 1 --lambda 3 --seed 11", "verify gsr --n 1 --seed 5 --trials 20",
                             "verify jl --n 1 --seed 5 --trials 20", "com --density oblique"}) {
        CAPTURE(args);
        const Run a = run(args);
        const Run b = run(args);
        const Run c = run(args, "CR_SHARP_THREADS=1");
        CHECK(a.status == 0);
        CHECK(a.out == b.out);
        CHECK(a.out == c.out);
    }
    const fs::path file = scratch() / "report.json";
    const Run to_file = run("maximize --n 1 --lambda 3 --seed 11 -o '" + file.string() + "'");
    CHECK(to_file.status == 0);
    CHECK(slurp(file) == run("maximize --n 1 --lambda 3 --seed 11").out);
    fs::remove_all(scratch());
}
