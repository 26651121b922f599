#include "lgbwt/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include "lgbwt/error.hpp"
#include "lgbwt/oracle.hpp"

namespace lgbwt::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

/// Calls f(line) for each line; a trailing newline does not start a new one.
template <class F>
void for_each_line(std::string_view content, F&& f) {
    std::size_t pos = 0;
    while (pos < content.size()) {
        std::size_t end = content.find('\n', pos);
        if (end == std::string_view::npos) end = content.size();
        f(strip_cr(content.substr(pos, end - pos)));
        pos = end + 1;
    }
}

bool has_sentinel_bytes(const SequenceCollection& coll) {
    for (const Record& r : coll.records) {
        if (r.data.find_first_of("#$") != std::string::npos) return true;
    }
    return false;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidThreshold:
            return kUsage;
        case ErrorCode::MalformedGrammar:
        case ErrorCode::UnsortedGrammar:
        case ErrorCode::SymbolNotIndexed:
        case ErrorCode::ChildrenNotIndexed:
            return kInternal;
        default:
            return kInputError;
    }
}

/// Oracle output for the variant, or nothing when the input is beyond the oracle limits.
std::optional<ExtString> reference_output(BwtVariant v, const SequenceCollection& coll, std::uint64_t cap) {
    const OracleLimits lim;
    const std::size_t sentinels = uses_sentinels(v) ? coll.size() + 1 : 0;
    if (coll.total_length() + sentinels > lim.max_len || coll.size() > lim.max_records) return std::nullopt;
    if (coll.total_length() + sentinels > cap) return std::nullopt;
    std::string text;
    for (const Record& r : coll.records) text += r.data;
    switch (v) {
        case BwtVariant::Bbwt:
            return oracle_bbwt(to_ext(text), lim);
        case BwtVariant::DollarBwt: {
            ExtString s = to_ext(text);
            s.push_back(ExtChar::sentinel(0));
            return oracle_bwt_sa(s, lim);
        }
        case BwtVariant::Ebwt: {
            std::vector<ExtString> strings;
            for (const Record& r : coll.records) strings.push_back(to_ext(r.data));
            return oracle_ebwt(strings, lim);
        }
        case BwtVariant::DolEbwt:
            return oracle_dol_ebwt(coll, lim);
        case BwtVariant::MdolBwt:
            return oracle_mdol_bwt(coll, lim);
        case BwtVariant::ConcBwt:
            return oracle_conc_bwt(coll, lim);
    }
    return std::nullopt;
}

void write_stats(std::ostream& os, const RunConfig& cfg, const DeriveStats& st, double ingest_s, double write_s) {
    os << "variant " << to_string(cfg.variant) << '\n'
       << "threads " << cfg.threads << '\n'
       << "N " << st.input_len << '\n'
       << "g " << st.grammar_size << '\n'
       << "rules " << st.rules << '\n'
       << "roots " << st.roots << '\n'
       << "r " << st.runs << '\n'
       << "run_records " << st.run_records << '\n'
       << "sort_iterations " << st.sort_iterations << '\n'
       << "merges " << st.build.merges << '\n'
       << "cache_verdicts " << st.build.cache_verdicts << '\n'
       << "cache_fallbacks " << st.build.cache_fallbacks << '\n'
       << "lambda_verdicts " << st.build.lambda_verdicts << '\n'
       << "heavy_nodes " << st.build.heavy_nodes << '\n'
       << "heavy_hits " << st.build.heavy_hits << '\n'
       << "time_ingest " << ingest_s << '\n'
       << "time_build " << st.build_seconds << '\n'
       << "time_sort " << st.sort_seconds << '\n'
       << "time_derive " << st.derive_seconds << '\n'
       << "time_write " << write_s << '\n';
}

}  // namespace

std::optional<std::string> check_config(const RunConfig& cfg) {
    if (cfg.threads < 1) return "--threads must be at least 1";
    if (cfg.n_thres <= 1) return "--n-thres must be greater than 1";
    if (cfg.input_format == InputFormat::Raw && is_collection_variant(cfg.variant)) {
        return "variant " + std::string(to_string(cfg.variant)) + " needs a collection; use --input-format fasta or lines";
    }
    if (cfg.expansion_cap == 0) return "--expansion-cap must be positive";
    return std::nullopt;
}

SequenceCollection parse_input(std::string_view content, InputFormat format) {
    if (content.empty()) throw Error(ErrorCode::EmptyFile, "input is empty");
    SequenceCollection coll;
    switch (format) {
        case InputFormat::Raw:
            coll.add("raw", std::string(content));
            break;
        case InputFormat::Lines: {
            std::size_t line_no = 0;
            for_each_line(content, [&](std::string_view line) {
                ++line_no;
                if (line.empty()) throw Error(ErrorCode::EmptyRecord, "line " + std::to_string(line_no) + " is empty");
                coll.add(std::to_string(line_no), std::string(line));
            });
            break;
        }
        case InputFormat::Fasta: {
            bool open = false;
            for_each_line(content, [&](std::string_view line) {
                if (!line.empty() && line.front() == '>') {
                    if (open && coll.records.back().data.empty()) {
                        throw Error(ErrorCode::MalformedFasta, "record '" + coll.records.back().id + "' has no sequence");
                    }
                    coll.add(std::string(line.substr(1)), "");
                    open = true;
                } else if (!open) {
                    if (!line.empty()) throw Error(ErrorCode::MalformedFasta, "sequence data before the first header");
                } else {
                    coll.records.back().data.append(line);
                }
            });
            if (!open) throw Error(ErrorCode::MalformedFasta, "no FASTA header found");
            if (coll.records.back().data.empty()) {
                throw Error(ErrorCode::MalformedFasta, "record '" + coll.records.back().id + "' has no sequence");
            }
            break;
        }
    }
    if (coll.empty()) throw Error(ErrorCode::EmptyFile, "input has no records");
    return coll;
}

SequenceCollection ingest(const std::string& path, InputFormat format) {
    std::string content;
    if (path == "-") {
        content.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
        content.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        if (in.bad()) throw Error(ErrorCode::Io, "cannot read '" + path + "'");
    }
    return parse_input(content, format);
}

void write_output(std::ostream& os, const RleString& rendered, const RleString& raw, OutputFormat format) {
    switch (format) {
        case OutputFormat::Plain: {
            const std::string bytes = to_bytes(rendered);
            os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
            break;
        }
        case OutputFormat::RleText:
            for (const Run& r : rendered.runs()) os << r.c.value() << ' ' << r.count << '\n';
            break;
        case OutputFormat::RleBinary:
            for (const Run& r : rendered.runs()) {
                char buf[9];
                buf[0] = static_cast<char>(r.c.value());
                for (int k = 0; k < 8; ++k) buf[1 + k] = static_cast<char>((r.count >> (8 * k)) & 0xff);
                os.write(buf, sizeof buf);
            }
            break;
        case OutputFormat::ExtText:
            for (const Run& r : raw.runs()) os << (r.c.is_byte() ? 'b' : 's') << r.c.value() << ' ' << r.count << '\n';
            break;
    }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (auto problem = check_config(cfg)) {
        err << "error: " << *problem << '\n';
        return kUsage;
    }
    try {
        auto t0 = Clock::now();
        const SequenceCollection coll = ingest(cfg.input, cfg.input_format);
        const double ingest_s = std::chrono::duration<double>(Clock::now() - t0).count();
        if (uses_sentinels(cfg.variant) && !cfg.allow_sentinel_clash && has_sentinel_bytes(coll)) {
            throw Error(ErrorCode::SentinelClash,
                        "input contains '#' or '$', which collide with rendered sentinels (use --allow-sentinel-clash)");
        }

        DeriveOptions opts;
        opts.build.strategy = cfg.strategy;
        opts.build.heavy_light = cfg.heavy_light;
        opts.build.n_thres = cfg.n_thres;
        opts.threads = cfg.threads;
        DeriveStats st;
        const RleString raw = derive_variant(cfg.variant, coll, opts, &st);
        const RleString rendered = render(raw, cfg.variant);

        t0 = Clock::now();
        if (cfg.output.empty()) {
            write_output(out, rendered, raw, cfg.output_format);
            out.flush();
        } else {
            std::ofstream file(cfg.output, std::ios::binary);
            if (!file) throw Error(ErrorCode::Io, "cannot open '" + cfg.output + "' for writing");
            write_output(file, rendered, raw, cfg.output_format);
            if (!file.flush()) throw Error(ErrorCode::Io, "cannot write '" + cfg.output + "'");
        }
        const double write_s = std::chrono::duration<double>(Clock::now() - t0).count();

        if (cfg.stats) {
            if (cfg.stats_file.empty()) {
                write_stats(err, cfg, st, ingest_s, write_s);
            } else {
                std::ofstream sf(cfg.stats_file);
                if (!sf) throw Error(ErrorCode::Io, "cannot open '" + cfg.stats_file + "' for writing");
                write_stats(sf, cfg, st, ingest_s, write_s);
            }
        }

        if (cfg.verify) {
            const auto expected = reference_output(cfg.variant, coll, cfg.expansion_cap);
            if (!expected) {
                err << "warning: input too large for verification; skipped\n";
            } else if (*expected != raw.decode()) {
                err << "error: output differs from the reference transform\n";
                return kVerifyMismatch;
            }
        }
        return kOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::bad_alloc&) {
        err << "error: out of memory\n";
        return kInternal;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInternal;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Run-length BWT variants from a Lyndon grammar"};
    RunConfig cfg;
    std::string variant = "bbwt";
    std::string strategy = "naive";
    std::string input_format = "fasta";
    std::string output_format = "plain";
    bool no_heavy_light = false;

    const std::vector<std::string> variants{"bbwt", "dollar-bwt", "ebwt", "dol-ebwt", "mdol-bwt", "conc-bwt"};
    const std::map<std::string, ComparisonStrategy> strategies{{"naive", ComparisonStrategy::Naive},
                                                               {"lyndon-array", ComparisonStrategy::LyndonArray},
                                                               {"ordered-markers", ComparisonStrategy::OrderedMarkers}};
    const std::map<std::string, InputFormat> inputs{
        {"fasta", InputFormat::Fasta}, {"raw", InputFormat::Raw}, {"lines", InputFormat::Lines}};
    const std::map<std::string, OutputFormat> outputs{{"plain", OutputFormat::Plain},
                                                      {"rle-text", OutputFormat::RleText},
                                                      {"rle-binary", OutputFormat::RleBinary},
                                                      {"ext-text", OutputFormat::ExtText}};
    auto keys = [](const auto& m) {
        std::vector<std::string> k;
        for (const auto& kv : m) k.push_back(kv.first);
        return k;
    };

    app.add_option("input", cfg.input, "Input file, or - for standard input")->required();
    app.add_option("-o,--output", cfg.output, "Output file (default: standard output)");
    app.add_option("--variant", variant, "Transform to compute")->check(CLI::IsMember(variants));
    app.add_option("--strategy", strategy, "Symbol comparison strategy")->check(CLI::IsMember(keys(strategies)));
    app.add_option("--threads", cfg.threads, "Worker threads for grammar construction")->check(CLI::PositiveNumber);
    app.add_option("--n-thres", cfg.n_thres, "Heavy-node threshold (> 1)");
    app.add_flag("--no-heavy-light", no_heavy_light, "Name every parse node immediately");
    app.add_option("--input-format", input_format, "Input format")->check(CLI::IsMember(keys(inputs)));
    app.add_option("--output-format", output_format, "Output format")->check(CLI::IsMember(keys(outputs)));
    app.add_flag("--stats", cfg.stats, "Report statistics as key/value lines");
    app.add_option("--stats-file", cfg.stats_file, "Write statistics here instead of standard error");
    app.add_flag("--verify", cfg.verify, "Cross-check against a brute-force reference on small inputs");
    app.add_flag("--allow-sentinel-clash", cfg.allow_sentinel_clash, "Accept '#' and '$' in inputs of sentinel variants");
    app.add_option("--expansion-cap", cfg.expansion_cap, "Largest output length that --verify will expand");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    cfg.variant = *parse_variant(variant);
    cfg.strategy = strategies.at(strategy);
    cfg.input_format = inputs.at(input_format);
    cfg.output_format = outputs.at(output_format);
    cfg.heavy_light = !no_heavy_light;
    if (!cfg.stats_file.empty()) cfg.stats = true;
    return run(cfg, out, err);
}

}  // namespace lgbwt::cli
