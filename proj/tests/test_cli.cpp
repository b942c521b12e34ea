// Exercises the command-line front end as a black box: exit-code taxonomy,
// output formats, and byte-identical reruns.  The binary path arrives as
// argv[1].

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string g_cli;
int g_failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        std::cerr << "FAILED: " << what << "\n";
        ++g_failures;
    }
}

int run(const std::string& args, const std::string& out_path = "") {
    std::string cmd = g_cli + " " + args;
    if (!out_path.empty()) cmd += " --out " + out_path;
    cmd += " >/dev/null 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <heislab-binary>\n";
        return 2;
    }
    g_cli = argv[1];
    const std::string tmp = "/tmp/heislab_cli_test";

    // exit-code taxonomy
    expect(run("special-fn --ell-max 120") == 0, "special-fn exits 0 on pass");
    expect(run("key-identity --lambda 2 --ell 1 --trials 2") == 0, "key-identity exits 0");
    expect(run("key-identity --lambda 0") == 2, "lambda = 0 is a usage error");
    expect(run("key-identity --bogus-flag 3") == 2, "unknown flag is a usage error");
    expect(run("nonsense-subcommand") == 2, "unknown subcommand is a usage error");
    expect(run("zygmund --n-max 40 --trials 5") == 0, "zygmund exits 0");
    expect(run("spectrum --mu-max 10") == 0, "spectrum exits 0");
    expect(run("extremize --lambda 4 --ell 0 --restarts 3") == 0, "extremize exits 0");
    expect(run("basis --lambda-max 2 --ell-max 1 --omega-max 1") == 0, "basis exits 0");
    expect(run("sharpness --lambda-min 128 --lambda-max 256 --tol 1e-3") == 0, "sharpness exits 0");
    expect(run("spectrum --mu-max -3") == 2, "negative mu-max rejected");
    expect(run("key-identity --lambda 2 --grid 100") == 2, "non-power-of-two grid rejected");

    // ndjson shape: one JSON object per line, header first, summary last,
    // every numeric row carries its tolerance
    {
        expect(run("key-identity --lambda 3 --ell 2 --trials 3", tmp + "_a.json") == 0,
               "report written");
        std::ifstream in(tmp + "_a.json");
        std::string line;
        std::vector<std::string> lines;
        while (std::getline(in, line)) lines.push_back(line);
        expect(lines.size() == 5, "header + 3 rows + summary");
        expect(lines.front().find("\"record\":\"header\"") != std::string::npos, "header first");
        expect(lines.back().find("\"record\":\"summary\"") != std::string::npos, "summary last");
        for (std::size_t i = 1; i + 1 < lines.size(); ++i)
            expect(lines[i].find("\"tol\":") != std::string::npos, "row carries tol");
    }

    // csv shape
    {
        expect(run("spectrum --mu-max 8 --format csv", tmp + "_b.csv") == 0, "csv written");
        std::ifstream in(tmp + "_b.csv");
        std::string header;
        std::getline(in, header);
        expect(header.rfind("record,", 0) == 0, "csv header row present");
        std::string second;
        std::getline(in, second);
        expect(second.rfind("header,", 0) == 0, "csv config echo row present");
    }

    // identical config + seed => byte-identical reports
    const std::vector<std::string> repro_cmds = {
        "key-identity --lambda 3 --ell 1 --trials 4 --seed 77",
        "zygmund --n-max 60 --trials 8 --seed 77",
        "spectrum --mu-max 12",
        "sharpness --lambda-min 128 --lambda-max 256 --tol 1e-3",
        "extremize --lambda 5 --ell 1 --restarts 4 --seed 77",
        "special-fn --ell-max 60",
        "basis --lambda-max 2 --ell-max 1 --omega-max 1",
        "zygmund --n-max 60 --trials 8 --seed 77 --threads 4",
    };
    for (std::size_t i = 0; i < repro_cmds.size(); ++i) {
        const std::string f1 = tmp + "_r" + std::to_string(i) + "_1";
        const std::string f2 = tmp + "_r" + std::to_string(i) + "_2";
        expect(run(repro_cmds[i], f1) == 0, "repro run 1: " + repro_cmds[i]);
        expect(run(repro_cmds[i], f2) == 0, "repro run 2: " + repro_cmds[i]);
        expect(!slurp(f1).empty() && slurp(f1) == slurp(f2),
               "byte-identical reports: " + repro_cmds[i]);
    }
    // the threaded zygmund run must match the serial one row for row (the
    // config echo differs in the threads field, so compare past the header)
    {
        const std::string serial = slurp(tmp + "_r1_1");
        const std::string threaded = slurp(tmp + "_r7_1");
        const auto body = [](const std::string& s) { return s.substr(s.find('\n') + 1); };
        expect(!serial.empty() && body(serial) == body(threaded),
               "thread count does not change result bytes");
    }

    if (g_failures == 0) {
        std::cout << "test_cli: all checks passed\n";
        return 0;
    }
    std::cout << "test_cli: " << g_failures << " checks failed\n";
    return 1;
}
