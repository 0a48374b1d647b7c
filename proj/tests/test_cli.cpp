#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace {

std::string g_binary;
std::filesystem::path g_dir;

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

CliResult run_cli(const std::string& args) {
    auto out_path = g_dir / "stdout.txt";
    auto err_path = g_dir / "stderr.txt";
    std::string cmd = g_binary + " " + args + " >" + out_path.string() + " 2>" +
                      err_path.string();
    int rc = std::system(cmd.c_str());
    return {WEXITSTATUS(rc), slurp(out_path), slurp(err_path)};
}

}  // namespace

TEST_CASE("asm: valid file prints a 15-digit hex word") {
    spit(g_dir / "p.asm",
         "global rep=16 dat=1\n"
         "phase 1: pa=6 sc=3 se=1 next=2\n"
         "phase 2: pa=0 se=0 next=0\n");
    auto r = run_cli("asm " + (g_dir / "p.asm").string());
    CHECK(r.exit_code == 0);
    REQUIRE(r.out.size() >= 15);
    CHECK(r.out.size() == 16);  // 15 digits + newline
    for (int i = 0; i < 15; ++i)
        CHECK(std::isxdigit(static_cast<unsigned char>(r.out[std::size_t(i)])));
}

TEST_CASE("asm: empty file encodes the zero word") {
    spit(g_dir / "empty.asm", "");
    auto r = run_cli("asm " + (g_dir / "empty.asm").string());
    CHECK(r.exit_code == 0);
    CHECK(r.out == "000000000000000\n");
}

TEST_CASE("asm: longcond violation under id0 fails with a diagnostic") {
    spit(g_dir / "se12.asm", "phase 1: se=12\n");
    auto r = run_cli("asm " + (g_dir / "se12.asm").string());
    CHECK(r.exit_code != 0);
    CHECK(r.err.find("LONGCOND") != std::string::npos);
    CHECK(r.out.empty());

    auto ok = run_cli("asm --variant id2 " + (g_dir / "se12.asm").string());
    CHECK(ok.exit_code == 0);
    auto skipped = run_cli("asm --variant none " + (g_dir / "se12.asm").string());
    CHECK(skipped.exit_code == 0);
}

TEST_CASE("asm: parse errors carry line numbers on stderr") {
    spit(g_dir / "bad.asm", "phase 1: se=1\nwhat is this\n");
    auto r = run_cli("asm " + (g_dir / "bad.asm").string());
    CHECK(r.exit_code != 0);
    CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("disasm: round trip and failure modes") {
    auto r = run_cli("disasm 300000000000000");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("global rep=64") != std::string::npos);
    CHECK(r.out.find("Default, no action") != std::string::npos);

    spit(g_dir / "rt.asm", r.out);
    auto back = run_cli("asm --variant none " + (g_dir / "rt.asm").string());
    CHECK(back.exit_code == 0);
    CHECK(back.out == "300000000000000\n");

    CHECK(run_cli("disasm zzz").exit_code != 0);
    CHECK(run_cli("disasm 12345").exit_code != 0);
}

TEST_CASE("disasm/asm: random words round trip through the text form") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 100; ++i) {
        std::uint64_t raw = rng() & ((1ull << 58) - 1);
        char hex[16];
        std::snprintf(hex, sizeof hex, "%015llX",
                      static_cast<unsigned long long>(raw));
        auto dis = run_cli(std::string("disasm ") + hex);
        REQUIRE(dis.exit_code == 0);
        spit(g_dir / "rt.asm", dis.out);
        auto back = run_cli("asm --variant none " + (g_dir / "rt.asm").string());
        REQUIRE(back.exit_code == 0);
        CHECK(back.out == std::string(hex) + "\n");
    }
}

TEST_CASE("run: deterministic trace with the documented schema") {
    auto out1 = (g_dir / "r1").string();
    auto out2 = (g_dir / "r2").string();
    auto r1 = run_cli("run --variant id4 --ticks 200 --seed 9 --out " + out1);
    REQUIRE(r1.exit_code == 0);
    auto r2 = run_cli("run --variant id4 --ticks 200 --seed 9 --out " + out2);
    REQUIRE(r2.exit_code == 0);
    std::string t1 = slurp(g_dir / "r1" / "trace.csv");
    std::string t2 = slurp(g_dir / "r2" / "trace.csv");
    CHECK(!t1.empty());
    CHECK(t1 == t2);
    CHECK(t1.rfind("time_s,lablet,mode,phase,a0,do,a2,di,a1,pwr2,s0,s1,vdd_mv,"
                   "ecl_mask,event\n", 0) == 0);
    // id4 runs at 20 Hz: the first record sits at 50 ms.
    CHECK(t1.find("\n0.050000,0,") != std::string::npos);
}

TEST_CASE("run: stimulus ramp flips s1 at the 85 mV crossing") {
    std::string stim = "time_s,mv\n";
    for (int k = 0; k <= 12; ++k)
        stim += std::to_string(0.1 * k) + "," + std::to_string(10.0 * k) + "\n";
    spit(g_dir / "ramp.csv", stim);
    auto out = (g_dir / "ramp_out").string();
    auto r = run_cli("run --variant id0 --ticks 260 --stimuli " +
                     (g_dir / "ramp.csv").string() + " --out " + out);
    REQUIRE(r.exit_code == 0);
    std::istringstream in(slurp(g_dir / "ramp_out" / "trace.csv"));
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        auto t = std::stod(line.substr(0, line.find(',')));
        // s1 is the 12th column.
        std::istringstream ls(line);
        std::string field;
        for (int i = 0; i < 12; ++i)
            std::getline(ls, field, ',');
        CHECK(field == (t >= 0.9 ? "1" : "0"));
    }
}

TEST_CASE("run: --start powers on straight into a run phase") {
    auto out = (g_dir / "started").string();
    auto r = run_cli("run --variant id0 --ticks 20 --start p1 --out " + out);
    REQUIRE(r.exit_code == 0);
    std::string t = slurp(g_dir / "started" / "trace.csv");
    CHECK(t.find(",RUN,1,") != std::string::npos);
    CHECK(run_cli("run --ticks 5 --start p9 --out " + out).exit_code != 0);
}

TEST_CASE("run: bad inputs exit nonzero with messages") {
    CHECK(run_cli("run --variant nosuch --ticks 10 --out " +
                  (g_dir / "x").string()).exit_code != 0);
    CHECK(run_cli("run --program zz --ticks 10 --out " +
                  (g_dir / "x").string()).exit_code != 0);
    auto r = run_cli("run --stimuli /nonexistent.csv --ticks 10 --out " +
                     (g_dir / "x").string());
    CHECK(r.exit_code != 0);
    CHECK(!r.err.empty());
}

TEST_CASE("array: divergence summary for identical lablets with skewed clocks") {
    spit(g_dir / "arr.scn",
         "seed 4\n"
         "duration 2.0\n"
         "lablet 0 variant=id0 offset=0.00 start=p1\n"
         "lablet 1 variant=id0 offset=0.01 start=p1\n"
         "lablet 2 variant=id0 offset=-0.01 start=p1\n");
    auto out = (g_dir / "arr_out").string();
    auto r = run_cli("array --scenario " + (g_dir / "arr.scn").string() + " --out " +
                     out);
    REQUIRE(r.exit_code == 0);
    std::string div = slurp(g_dir / "arr_out" / "divergence.csv");
    CHECK(div.rfind("lablet_a,lablet_b,first_divergence_sample\n", 0) == 0);
    CHECK(div.find("0,1,50") != std::string::npos);
    CHECK(div.find("0,2,") != std::string::npos);
    CHECK(div.find("1,2,") != std::string::npos);
    CHECK(!slurp(g_dir / "arr_out" / "trace.csv").empty());
    // Per-lablet traces exist and carry only their own rows.
    std::string own = slurp(g_dir / "arr_out" / "lablet1.csv");
    CHECK(!own.empty());
    CHECK(own.find(",1,RUN,") != std::string::npos);
    CHECK(own.find(",0,RUN,") == std::string::npos);
    CHECK(std::filesystem::exists(g_dir / "arr_out" / "lablet2.csv"));
}

TEST_CASE("array: single lablet gives an empty pairwise summary") {
    spit(g_dir / "one.scn", "ticks 20\nlablet 0 variant=id0\n");
    auto out = (g_dir / "one_out").string();
    auto r = run_cli("array --scenario " + (g_dir / "one.scn").string() + " --out " +
                     out);
    REQUIRE(r.exit_code == 0);
    CHECK(slurp(g_dir / "one_out" / "divergence.csv") ==
          "lablet_a,lablet_b,first_divergence_sample\n");
}

TEST_CASE("array: bad scenario exits nonzero") {
    spit(g_dir / "bad.scn", "lablet 0\nbogus directive\n");
    auto r = run_cli("array --scenario " + (g_dir / "bad.scn").string() + " --out " +
                     (g_dir / "x").string());
    CHECK(r.exit_code != 0);
    CHECK(!r.err.empty());
}

TEST_CASE("export-vcd: produces a dump next to the trace") {
    auto out = (g_dir / "v").string();
    REQUIRE(run_cli("run --variant id0 --ticks 40 --out " + out).exit_code == 0);
    auto r = run_cli("export-vcd " + (g_dir / "v" / "trace.csv").string());
    CHECK(r.exit_code == 0);
    std::string vcd = slurp(g_dir / "v" / "trace.vcd");
    CHECK(vcd.find("$timescale 1 ms $end") != std::string::npos);
    CHECK(vcd.find("$scope module lablet0 $end") != std::string::npos);

    CHECK(run_cli("export-vcd /nonexistent.csv").exit_code != 0);
}

TEST_CASE("export-vcd: empty trace gives a header-only dump") {
    spit(g_dir / "empty.csv",
         "time_s,lablet,mode,phase,a0,do,a2,di,a1,pwr2,s0,s1,vdd_mv,ecl_mask,event\n");
    auto r = run_cli("export-vcd " + (g_dir / "empty.csv").string() + " --out " +
                     (g_dir / "empty.vcd").string());
    CHECK(r.exit_code == 0);
    std::string vcd = slurp(g_dir / "empty.vcd");
    CHECK(vcd.find("$enddefinitions $end") != std::string::npos);
    CHECK(vcd.find("#") == std::string::npos);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <lablet-binary>\n");
        return 2;
    }
    g_binary = argv[1];
    g_dir = std::filesystem::temp_directory_path() / "lablet_cli_test";
    std::filesystem::create_directories(g_dir);
    doctest::Context ctx;
    ctx.applyCommandLine(1, argv);
    return ctx.run();
}
