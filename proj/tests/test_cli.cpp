#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lgbwt/cli.hpp"
#include "lgbwt/error.hpp"

using namespace lgbwt;
using namespace lgbwt::cli;

namespace {

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::Io;
}

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("lgbwt-cli-" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }

    std::string write(const std::string& name, const std::string& content) const {
        const auto p = path_ / name;
        std::ofstream(p, std::ios::binary) << content;
        return p.string();
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "lgbwt");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::vector<std::string> data_of(const SequenceCollection& c) {
    std::vector<std::string> out;
    for (const auto& r : c.records) out.push_back(r.data);
    return out;
}

}  // namespace

TEST_CASE("input formats") {
    const auto fasta = parse_input(">x\nAB\nBA\n>y\nC\n", InputFormat::Fasta);
    CHECK(data_of(fasta) == std::vector<std::string>{"ABBA", "C"});
    CHECK(fasta.records[0].id == "x");
    CHECK(data_of(parse_input(">x\r\nAB\r\nBA", InputFormat::Fasta)) == std::vector<std::string>{"ABBA"});
    CHECK(parse_input("abbabcbcabb", InputFormat::Raw).records.at(0).data.size() == 11);
    CHECK(parse_input("ab\nab\nb\n", InputFormat::Lines).size() == 3);
    CHECK(data_of(parse_input("ab\nc", InputFormat::Lines)) == std::vector<std::string>{"ab", "c"});
}

TEST_CASE("input errors") {
    CHECK(code_of([] { parse_input("", InputFormat::Fasta); }) == ErrorCode::EmptyFile);
    CHECK(code_of([] { parse_input("", InputFormat::Raw); }) == ErrorCode::EmptyFile);
    CHECK(code_of([] { parse_input("AC\n>x\nA\n", InputFormat::Fasta); }) == ErrorCode::MalformedFasta);
    CHECK(code_of([] { parse_input(">x\n>y\nA\n", InputFormat::Fasta); }) == ErrorCode::MalformedFasta);
    CHECK(code_of([] { parse_input(">x\nA\n>y\n", InputFormat::Fasta); }) == ErrorCode::MalformedFasta);
    CHECK(code_of([] { parse_input("a\n\nb\n", InputFormat::Lines); }) == ErrorCode::EmptyRecord);
    CHECK(code_of([] { ingest("/nonexistent/lgbwt-input", InputFormat::Raw); }) == ErrorCode::Io);
}

TEST_CASE("configuration checks") {
    RunConfig cfg;
    CHECK_FALSE(check_config(cfg).has_value());
    cfg.threads = 0;
    CHECK(check_config(cfg).has_value());
    cfg = RunConfig{};
    cfg.n_thres = 1;
    CHECK(check_config(cfg).has_value());
    cfg = RunConfig{};
    cfg.input_format = InputFormat::Raw;
    cfg.variant = BwtVariant::MdolBwt;
    CHECK(check_config(cfg).has_value());
    cfg.variant = BwtVariant::DollarBwt;
    CHECK_FALSE(check_config(cfg).has_value());
}

TEST_CASE("end-to-end examples") {
    TempDir dir;
    const std::string raw = dir.write("raw.txt", "abbabcbcabb");
    const std::string stats = dir.file("stats.txt");
    auto r = invoke({raw, "--input-format", "raw", "--variant", "bbwt", "--stats-file", stats, "--verify"});
    CHECK(r.code == kOk);
    CHECK(r.out == "bcbbbaacabb");
    const std::string st = slurp(stats);
    CHECK(st.find("g 11\n") != std::string::npos);
    CHECK(st.find("N 11\n") != std::string::npos);
    CHECK(st.find("r 7\n") != std::string::npos);
    CHECK(st.find("time_build ") != std::string::npos);

    r = invoke({dir.write("banana.txt", "banana"), "--input-format", "raw", "--variant", "dollar-bwt", "--verify"});
    CHECK(r.code == kOk);
    CHECK(r.out == "annb$aa");

    r = invoke({dir.write("lines.txt", "ab\nab\n"), "--input-format", "lines", "--variant", "ebwt", "--verify"});
    CHECK(r.code == kOk);
    CHECK(r.out == "bbaa");

    r = invoke({dir.write("c.fa", ">1\nb\n>2\na\n"), "--variant", "conc-bwt", "--verify", "--stats"});
    CHECK(r.code == kOk);
    CHECK(r.out.size() == 5);
    CHECK(r.err.find("variant conc-bwt") != std::string::npos);
}

TEST_CASE("output formats encode the same string") {
    TempDir dir;
    const std::string in = dir.write("in.txt", "aaabbbbbcaaaaaaaaaaab\nabab\n");
    const auto plain = invoke({in, "--input-format", "lines", "--variant", "dol-ebwt"});
    REQUIRE(plain.code == kOk);

    const auto text = invoke({in, "--input-format", "lines", "--variant", "dol-ebwt", "--output-format", "rle-text"});
    std::istringstream lines(text.out);
    std::string decoded;
    unsigned byte;
    unsigned long long count;
    while (lines >> byte >> count) decoded.append(count, static_cast<char>(byte));
    CHECK(decoded == plain.out);

    const std::string bin_path = dir.file("out.bin");
    const auto bin = invoke({in, "--input-format", "lines", "--variant", "dol-ebwt", "--output-format", "rle-binary", "-o", bin_path});
    REQUIRE(bin.code == kOk);
    CHECK(bin.out.empty());
    const std::string raw = slurp(bin_path);
    REQUIRE(raw.size() % 9 == 0);
    decoded.clear();
    for (std::size_t i = 0; i < raw.size(); i += 9) {
        std::uint64_t n = 0;
        for (int k = 7; k >= 0; --k) n = (n << 8) | static_cast<unsigned char>(raw[i + 1 + k]);
        decoded.append(n, raw[i]);
    }
    CHECK(decoded == plain.out);

    const auto ext = invoke({in, "--input-format", "lines", "--variant", "dol-ebwt", "--output-format", "ext-text"});
    CHECK(ext.out.find("s0 ") != std::string::npos);
}

TEST_CASE("threads and strategies give identical bytes") {
    TempDir dir;
    std::mt19937_64 rng(61);
    std::string fasta;
    for (int k = 0; k < 60; ++k) {
        fasta += ">r" + std::to_string(k) + "\n";
        const std::size_t len = 1 + rng() % 80;
        for (std::size_t i = 0; i < len; ++i) fasta.push_back("ACGT"[rng() % (k % 2 ? 2 : 4)]);
        fasta += "\n";
    }
    const std::string in = dir.write("in.fa", fasta);
    for (const char* variant : {"ebwt", "dol-ebwt", "mdol-bwt", "conc-bwt", "bbwt", "dollar-bwt"}) {
        const auto reference = invoke({in, "--variant", variant});
        REQUIRE(reference.code == kOk);
        for (const char* strategy : {"naive", "lyndon-array", "ordered-markers"}) {
            for (const char* threads : {"1", "2", "4", "8"}) {
                const auto r = invoke({in, "--variant", variant, "--strategy", strategy, "--threads", threads, "--n-thres", "3"});
                CHECK(r.code == kOk);
                CHECK(r.out == reference.out);
            }
        }
    }
}

TEST_CASE("exit codes") {
    TempDir dir;
    const std::string raw = dir.write("raw.txt", "abc");
    CHECK(invoke({raw, "--variant", "nope"}).code == kUsage);
    CHECK(invoke({raw, "--threads", "0"}).code == kUsage);
    CHECK(invoke({raw, "--input-format", "raw", "--n-thres", "1"}).code == kUsage);
    CHECK(invoke({raw, "--input-format", "raw", "--variant", "ebwt"}).code == kUsage);
    CHECK(invoke({}).code == kUsage);
    CHECK(invoke({dir.file("missing.txt"), "--input-format", "raw"}).code == kInputError);
    CHECK(invoke({raw}).code == kInputError);  // not FASTA

    const std::string clash = dir.write("clash.txt", "a$b");
    const auto refused = invoke({clash, "--input-format", "raw", "--variant", "dollar-bwt"});
    CHECK(refused.code == kInputError);
    CHECK(refused.err.find("SentinelClash") != std::string::npos);
    CHECK(invoke({clash, "--input-format", "raw", "--variant", "dollar-bwt", "--allow-sentinel-clash", "--verify"}).code == kOk);
    CHECK(invoke({clash, "--input-format", "raw", "--variant", "bbwt"}).code == kOk);

    const auto big = invoke({dir.write("big.txt", std::string(5000, 'a') + "b"), "--input-format", "raw", "--verify"});
    CHECK(big.code == kOk);
    CHECK(big.err.find("skipped") != std::string::npos);
}
