#include "qcldpc/cli.hpp"

#include "qcldpc/base_matrix.hpp"
#include "qcldpc/campaign.hpp"
#include "qcldpc/layer_schedule.hpp"
#include "qcldpc/report.hpp"

#include <CLI11.hpp>

#include <ios>
#include <sstream>

namespace qcldpc {

namespace {

struct CampaignOptions {
    CampaignConfig cfg;
    std::string out_path;
    std::string format = "csv";
    std::string schedule = "merged";
};

void add_campaign_options(CLI::App& cmd, CampaignOptions& o, bool with_schedule)
{
    cmd.add_option("--matrix", o.cfg.matrix_path, "Base matrix file")->required();
    cmd.add_option("--snr", o.cfg.snr_list, "Linear SNR points, comma separated")->required()->delimiter(',');
    cmd.add_option("--iters", o.cfg.max_iterations, "Maximum decoding iterations")->capture_default_str();
    cmd.add_option("--batch", o.cfg.batch_size, "Frames decoded together (K2)")->capture_default_str();
    cmd.add_flag("--early-term", o.cfg.early_termination, "Stop once the syndrome is satisfied");
    cmd.add_option("--seed", o.cfg.seed, "RNG seed")->capture_default_str();
    cmd.add_option("--trials", o.cfg.min_trials, "Frames per SNR point")->capture_default_str();
    cmd.add_option("--workers", o.cfg.workers, "Decoder threads")->capture_default_str();
    cmd.add_option("--lane-budget", o.cfg.lane_budget, "Reference lane budget of the utilization metric")
        ->capture_default_str();
    cmd.add_option("--llr-clip", o.cfg.llr_clip, "Bound on stored |LLR|")->capture_default_str();
    cmd.add_option("--phi-epsilon", o.cfg.phi_epsilon, "Lower clamp of the phi argument")->capture_default_str();
    cmd.add_flag("--encode", o.cfg.encode, "Random payload words with their syndrome instead of all-zero");
    cmd.add_option("--out", o.out_path, "Output file (stdout when omitted)");
    cmd.add_option("--format", o.format, "csv or json")->capture_default_str();
    if (with_schedule)
        cmd.add_option("--schedule", o.schedule, "single or merged")->capture_default_str();
}

ScheduleKind parse_schedule_kind(const std::string& name)
{
    if (name == "single")
        return ScheduleKind::single_row;
    if (name == "merged")
        return ScheduleKind::merged;
    throw ConfigError("unknown schedule: " + name);
}

void print_schedule_summary(const BaseMatrix& base, const LayerSchedule& schedule, std::ostream& out)
{
    const auto graph = conflict_graph(base);
    out << "rows " << base.n_rows() << " cols " << base.n_cols() << " z " << base.z() << '\n';
    out << "edges " << base.edge_count() << " expanded_edges " << base.edge_count() * base.z() << '\n';
    out << "conflicts " << graph.edge_count() << '\n';
    out << "layers " << schedule.n_layers() << " k1 " << schedule.k1() << " max_layer " << schedule.max_layer_size()
        << '\n';
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Layered BP decoder benchmark for quasi-cyclic LDPC codes", "decode-bench"};
    app.require_subcommand(1);

    CampaignOptions run_opts;
    auto* run = app.add_subcommand("run", "Monte-Carlo FER / latency / throughput campaign");
    add_campaign_options(*run, run_opts, true);

    CampaignOptions cmp_opts;
    auto* compare = app.add_subcommand("compare-schedules", "Campaign under single-row and merged layer schedules");
    add_campaign_options(*compare, cmp_opts, false);

    std::string schedule_matrix;
    bool dump = false;
    std::string schedule_out;
    auto* schedule = app.add_subcommand("schedule", "Show the greedy layer schedule of a matrix");
    schedule->add_option("--matrix", schedule_matrix, "Base matrix file")->required();
    schedule->add_flag("--dump-schedule", dump, "Print one line per layer with its row indices");
    schedule->add_option("--out", schedule_out, "Output file (stdout when omitted)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    }

    try {
        if (*run) {
            auto& o = run_opts;
            o.cfg.schedule = parse_schedule_kind(o.schedule);
            const auto format = parse_report_format(o.format);
            const auto report = run_campaign(o.cfg);
            emit_report(report, format, o.out_path, out);
        } else if (*compare) {
            auto& o = cmp_opts;
            const auto format = parse_report_format(o.format);
            o.cfg.validate();
            const auto comparison = compare_schedules(o.cfg, load_base_matrix(o.cfg.matrix_path));
            const std::string text = format == ReportFormat::csv ? comparison_to_csv(comparison)
                                                                 : comparison_to_json(comparison).dump(2) + '\n';
            emit_text(text, o.out_path, out);
        } else if (*schedule) {
            const auto base = load_base_matrix(schedule_matrix);
            const auto layers = greedy_schedule(base);
            if (dump) {
                emit_text(dump_schedule(layers), schedule_out, out);
            } else {
                std::ostringstream text;
                print_schedule_summary(base, layers, text);
                emit_text(text.str(), schedule_out, out);
            }
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const ParseError& e) {
        err << "matrix error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return kExitIoError;
    } catch (const std::ios_base::failure& e) {
        err << "io error: " << e.what() << '\n';
        return kExitIoError;
    }
    return kExitOk;
}

} // namespace qcldpc
