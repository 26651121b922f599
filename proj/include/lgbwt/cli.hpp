#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "lgbwt/builder.hpp"
#include "lgbwt/deriver.hpp"
#include "lgbwt/grammar.hpp"
#include "lgbwt/sequence_collection.hpp"

namespace lgbwt::cli {

enum class InputFormat { Fasta, Raw, Lines };
enum class OutputFormat { Plain, RleText, RleBinary, ExtText };

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kInputError = 3,
    kVerifyMismatch = 4,
};

struct RunConfig {
    BwtVariant variant = BwtVariant::Bbwt;
    ComparisonStrategy strategy = ComparisonStrategy::Naive;
    unsigned threads = 1;
    std::uint32_t n_thres = kDefaultHeavyThreshold;
    bool heavy_light = true;
    InputFormat input_format = InputFormat::Fasta;
    OutputFormat output_format = OutputFormat::Plain;
    bool stats = false;
    std::string stats_file;  // empty: standard error
    bool verify = false;
    bool allow_sentinel_clash = false;
    std::uint64_t expansion_cap = kDefaultExpansionCap;
    std::string input;   // "-" reads standard input
    std::string output;  // empty: standard output
};

/// Rejects inconsistent settings; the message explains the first problem.
std::optional<std::string> check_config(const RunConfig& cfg);

/// Splits file contents into records. Throws Error(EmptyFile),
/// Error(MalformedFasta) or Error(EmptyRecord).
SequenceCollection parse_input(std::string_view content, InputFormat format);
SequenceCollection ingest(const std::string& path, InputFormat format);

void write_output(std::ostream& os, const RleString& rendered, const RleString& raw, OutputFormat format);

/// Runs the whole pipeline; `out` receives the transform unless an output
/// path is configured, `err` receives diagnostics and statistics.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Argument parsing plus run().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lgbwt::cli
