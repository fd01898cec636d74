// Batch driver: runs YAML-configured parameter sweeps and writes CSV.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qar/config.hpp"
#include "qar/csv.hpp"
#include "qar/errors.hpp"
#include "qar/sweep.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kPartial = 2, kIo = 3 };

int cmd_validate(const std::string& path)
{
    try {
        const qar::RunConfig cfg = qar::load_config(path);
        const std::size_t points = cfg.sweep.steps * (cfg.series ? cfg.series->values.size() : 1);
        std::cout << path << ": ok (" << qar::to_string(cfg.solver) << ", " << points << " points)\n";
        return kOk;
    } catch (const qar::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const qar::ConfigError& e) {
        std::cerr << path << ": invalid: " << e.what() << '\n';
        return kInvalid;
    }
}

int cmd_run(const std::string& path, const std::string& out_override, std::size_t jobs)
{
    qar::RunConfig cfg;
    try {
        cfg = qar::load_config(path);
    } catch (const qar::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const qar::ConfigError& e) {
        std::cerr << path << ": invalid: " << e.what() << '\n';
        return kInvalid;
    }
    const std::string out = out_override.empty() ? cfg.output : out_override;

    const qar::SweepResult res = qar::run_sweep(cfg, jobs);
    try {
        if (out.empty() || out == "-") qar::emit_csv(res, std::cout);
        else qar::write_csv(res, out);
    } catch (const qar::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    }
    if (const auto bad = res.failures(); bad > 0) {
        std::cerr << bad << " of " << res.rows.size() << " points failed\n";
        for (const auto& r : res.rows)
            if (!r.error.empty()) std::cerr << "  " << res.axis_name << '=' << qar::format_number(r.axis) << ": " << r.error << '\n';
        return kPartial;
    }
    return kOk;
}

int cmd_list()
{
    const fs::path dir{QAR_CONFIG_DIR};
    std::vector<fs::path> files;
    std::error_code ec;
    for (const auto& e : fs::directory_iterator(dir, ec))
        if (e.path().extension() == ".yaml") files.push_back(e.path());
    if (ec) {
        std::cerr << "error: cannot list " << dir << ": " << ec.message() << '\n';
        return kIo;
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        std::string desc;
        try {
            desc = qar::load_config(f.string()).description;
        } catch (const qar::Error& e) {
            desc = std::string("(invalid: ") + e.what() + ")";
        }
        std::cout << f.stem().string() << "  " << f.string() << "  " << desc << '\n';
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Heat currents of two-body quantum absorption refrigerators"};
    app.require_subcommand(1);

    std::string run_path, out_path;
    std::size_t jobs = 1;
    auto* run = app.add_subcommand("run", "Run the sweep described by a config file");
    run->add_option("config", run_path, "YAML run configuration")->required();
    run->add_option("--out", out_path, "CSV output path ('-' for stdout); overrides the config");
    run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    std::string validate_path;
    auto* val = app.add_subcommand("validate", "Check a config file without solving");
    val->add_option("config", validate_path, "YAML run configuration")->required();

    auto* list = app.add_subcommand("list-figures", "List the bundled figure configs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    if (*run) return cmd_run(run_path, out_path, jobs);
    if (*val) return cmd_validate(validate_path);
    if (*list) return cmd_list();
    return kInvalid;
}
