// Command-line orchestration: experiment configuration, long-run
// checkpointing, comparison reports, and emission of plot-ready data files.
// All emitted files are deterministic: identical inputs reproduce them byte
// for byte (headers carry fingerprints, never timestamps).

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bdlab/agreement.hpp"
#include "bdlab/baez_duarte.hpp"
#include "bdlab/checkpoint.hpp"
#include "bdlab/fingerprint.hpp"
#include "bdlab/report.hpp"
#include "bdlab/special.hpp"
#include "bdlab/version.hpp"
#include "bdlab/zeros.hpp"
#include "bdlab/zeta.hpp"

namespace fs = std::filesystem;
using namespace bdlab;

namespace {

struct CommonOpts {
    long k = 1000;
    long digits = 100;
    std::string zeros_file;
    long zeros_count = 0;
    long refine_digits = 0;
    std::string oversample = "2";
    long trace_stride = 0;
    std::string checkpoint_path;
    bool resume = false;
    std::string out_dir = ".";
    int threads = 0;
};

std::pair<long, long> parse_oversample(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return {std::stol(text), 1};
    return {std::stol(text.substr(0, slash)), std::stol(text.substr(slash + 1))};
}

NumericContext context_for(const CommonOpts& o, long digits) {
    auto [num, den] = parse_oversample(o.oversample);
    return make_context(digits, 20, num, den);
}

ZeroTable load_zero_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open zeros file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    if (buf.str().rfind("#version:", 0) == 0) return load_table(buf);
    return ingest_zero_table(buf, ZeroTableFormat::plain_ordinates,
                             fs::path(path).filename().string());
}

// Prepares zeros for an explicit-formula evaluation: loads a table; if it is
// a raw seed list (or carries too few digits), refines and attaches
// derivatives at the requested precision.
ZeroTable prepare_zeros(const CommonOpts& o, long count, long digits,
                        const NumericContext& ctx) {
    if (o.zeros_file.empty()) throw Error("--zeros-file is required for this command");
    ZeroTable t = load_zero_file(o.zeros_file);
    if (t.count() < count)
        throw Error("zero table has " + std::to_string(t.count()) + " zeros, need " +
                    std::to_string(count));
    t.zeros.resize(static_cast<size_t>(count));
    bool ready = true;
    for (const auto& z : t.zeros)
        if (!z.verified() || !z.zeta_prime || z.precision_digits < digits) ready = false;
    if (!ready) {
        std::cerr << "refining " << count << " zeros to " << digits << " digits...\n";
        refine_table(t, digits, ctx, o.threads);
        attach_zeta_prime(t, ctx, o.threads);
    }
    return t;
}

std::string generic_fingerprint(long k, const NumericContext& ctx) {
    return fnv1a64_hex("generic|k=" + std::to_string(k) + "|" + ctx.describe());
}

// Generic-sum runner shared by compare/table1/fig2: stderr progress, optional
// checkpoint file, resume semantics.
CkGenericResult run_generic(const CommonOpts& o, long k, const NumericContext& ctx) {
    CkGenericOptions opt;
    opt.trace_stride = o.trace_stride;
    std::string fp = generic_fingerprint(k, ctx);
    GenericState resume_state;
    if (o.resume) {
        if (o.checkpoint_path.empty()) throw Error("--resume requires --checkpoint");
        ExperimentCheckpoint cp = read_checkpoint_file(o.checkpoint_path);
        if (cp.config_fingerprint != fp)
            throw FingerprintMismatchError(
                "checkpoint belongs to a different experiment configuration");
        if (cp.complete) {
            std::cerr << "checkpoint already complete; reporting stored value\n";
            CkGenericResult done;
            done.complete = true;
            done.state = state_from_checkpoint(cp);
            done.value = done.state.partial_sum;
            done.delivered_digits = ctx.working_digits() -
                                    (required_precision_for_generic(k, 1) - 1 - 50) - 50;
            return done;
        }
        resume_state = state_from_checkpoint(cp);
        opt.resume = &resume_state;
        std::cerr << "resuming at j = " << resume_state.next_j << "\n";
    }
    if (!o.checkpoint_path.empty()) {
        opt.checkpoint_stride = 1000;
        opt.checkpoint_sink = [&](const GenericState& st) {
            write_checkpoint_file(o.checkpoint_path, checkpoint_from_state(st, fp, false));
        };
    }
    auto t0 = std::chrono::steady_clock::now();
    if (o.trace_stride > 0) {
        opt.progress_stride = o.trace_stride;
        opt.progress = [&](long j, const Real& partial) {
            auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
            std::cerr << "j = " << j << "  elapsed " << static_cast<long>(dt.count())
                      << "s  |partial| ~ " << abs(partial).str(6) << "\n";
        };
    }
    CkGenericResult res = ck_generic(k, ctx, opt);
    if (!o.checkpoint_path.empty())
        write_checkpoint_file(o.checkpoint_path, checkpoint_from_state(res.state, fp, true));
    return res;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
}

std::string common_header(const std::string& what, const CommonOpts& o,
                          const NumericContext& ctx, const std::string& extra = "") {
    std::ostringstream os;
    os << "# bdlab " << what << "\n";
    os << "# generator: " << kGenerator << "\n";
    os << "# context: " << ctx.describe() << "\n";
    os << "# config_fingerprint: " << generic_fingerprint(o.k, ctx) << "\n";
    if (!extra.empty()) os << extra;
    return os.str();
}

int cmd_compare(const CommonOpts& o) {
    long count = o.zeros_count > 0 ? o.zeros_count : 100;
    long zero_digits = o.refine_digits > 0 ? o.refine_digits : o.digits + 20;
    NumericContext octx = context_for(o, o.digits);
    ZeroTable zeros = prepare_zeros(o, count, zero_digits, octx);

    long P = required_precision_for_generic(o.k, o.digits);
    NumericContext gctx = context_for(o, P);
    CkGenericResult gen = run_generic(o, o.k, gctx);

    Real trend = ck_trend(o.k, octx);
    Real osc = ck_oscillation_exact(o.k, zeros, count, octx);
    Real explicit_ck = trend + osc;

    ComparisonReport r;
    r.k = o.k;
    r.zeros_used = count;
    r.context = gctx.describe();
    r.zero_table_fingerprint = zeros.fingerprint();
    r.c_generic = gen.value.rounded_to_digits(gen.delivered_digits).str();
    r.c_trend = trend.str();
    r.c_osc_exact = osc.str();
    r.c_explicit = explicit_ck.str();
    r.abs_difference = abs(gen.value.rounded_to(explicit_ck.prec()) - explicit_ck).str(8);
    r.agreement = digits_of_agreement(gen.value.rounded_to(explicit_ck.prec()), explicit_ck);
    r.delivered_digits = gen.delivered_digits;
    r.generator = kGenerator;

    std::string text = render_report_text(r);
    std::cout << text;
    fs::path dir(o.out_dir);
    fs::create_directories(dir);
    write_file(dir / ("compare_k" + std::to_string(o.k) + ".txt"), text);
    write_file(dir / ("compare_k" + std::to_string(o.k) + ".json"), render_report_json(r));
    return 0;
}

int cmd_table1(const CommonOpts& o) {
    long stride = o.trace_stride > 0 ? o.trace_stride : 10000;
    long P = required_precision_for_generic(o.k, o.digits);
    NumericContext ctx = context_for(o, P);
    CommonOpts run = o;
    run.trace_stride = stride;
    CkGenericResult res = run_generic(run, o.k, ctx);

    std::ostringstream os;
    os << common_header("table1", o, ctx,
                        "# k: " + std::to_string(o.k) + "\n# stride: " + std::to_string(stride) +
                            "\n");
    os << "n,partial_sum\n";
    for (const auto& row : res.trace.rows)
        os << row.n << "," << row.partial_sum.str(15) << "\n";
    fs::path dir(o.out_dir);
    fs::create_directories(dir);
    fs::path file = dir / ("table1_k" + std::to_string(o.k) + ".csv");
    write_file(file, os.str());
    std::cout << "wrote " << file.string() << "\n";
    std::cout << "final c_k = " << res.value.str(15) << "\n";
    return 0;
}

int cmd_fig1(const CommonOpts& o, long k_min, long k_max, long samples) {
    long count = o.zeros_count > 0 ? o.zeros_count : 50;
    long zero_digits = o.refine_digits > 0 ? o.refine_digits : 40;
    NumericContext ctx = context_for(o, std::min(o.digits, zero_digits));
    ZeroTable zeros = prepare_zeros(o, count, zero_digits, ctx);
    SineApprox sine = sine_approx_params(zeros.at(1), ctx);

    std::ostringstream os;
    os << common_header("fig1", o, ctx,
                        "# zero_table_fingerprint: " + zeros.fingerprint() + "\n# zeros: " +
                            std::to_string(count) + "\n# sine_A: " + sine.amplitude_A.str(7) +
                            "\n# sine_phi: " + sine.phase_phi.str(7) + "\n");
    os << "k,c_explicit,envelope_upper,envelope_lower\n";
    double lk0 = std::log10(static_cast<double>(k_min));
    double lk1 = std::log10(static_cast<double>(k_max));
    long prev_k = 0;
    for (long i = 0; i < samples; ++i) {
        double f = samples == 1 ? 0.0 : static_cast<double>(i) / (samples - 1);
        long k = static_cast<long>(std::llround(std::pow(10.0, lk0 + f * (lk1 - lk0))));
        if (k <= prev_k) k = prev_k + 1;
        prev_k = k;
        Real c = ck_trend(k, ctx) + ck_oscillation_asymptotic(k, zeros, count, ctx);
        auto [up, lo] = envelope(k, sine, ctx);
        os << k << "," << c.str(15) << "," << up.str(15) << "," << lo.str(15) << "\n";
    }
    fs::path dir(o.out_dir);
    fs::create_directories(dir);
    fs::path file = dir / "fig1.csv";
    write_file(file, os.str());
    std::cout << "wrote " << file.string() << "\n";
    return 0;
}

int cmd_fig2(const CommonOpts& o, long degrade_to) {
    long count = o.zeros_count > 0 ? o.zeros_count : 100;
    long zero_digits = o.refine_digits > 0 ? o.refine_digits : o.digits + 20;
    NumericContext octx = context_for(o, o.digits);
    ZeroTable zeros = prepare_zeros(o, count, zero_digits, octx);

    long P = required_precision_for_generic(o.k, o.digits);
    NumericContext gctx = context_for(o, P);
    CkGenericResult gen = run_generic(o, o.k, gctx);

    auto rows = y_curve(o.k, gen.value, zeros, count, octx);
    std::vector<YCurvePoint> degraded;
    if (degrade_to > 0) {
        ZeroTable soft = degrade_derivatives(zeros, degrade_to);
        degraded = y_curve(o.k, gen.value, soft, count, octx);
    }

    std::ostringstream os;
    os << common_header(
        "fig2", o, gctx,
        "# zero_table_fingerprint: " + zeros.fingerprint() + "\n# k: " + std::to_string(o.k) +
            "\n# sign convention: y = -1/ln|S_n - c_generic| (positive while converging; the\n"
            "#   bare 1/ln form goes negative for |delta| < 1, so the minus is applied here)\n" +
            (degrade_to > 0 ? "# degraded_to: " + std::to_string(degrade_to) + " digits\n" : ""));
    os << (degrade_to > 0 ? "n,gamma,y,y_degraded\n" : "n,gamma,y\n");
    for (size_t i = 0; i < rows.size(); ++i) {
        long n = rows[i].n;
        std::string gamma = n == 0 ? "0" : zeros.at(n).gamma.str(15);
        os << n << "," << gamma << ","
           << (rows[i].saturated ? "saturated" : rows[i].y.str(10));
        if (degrade_to > 0)
            os << "," << (degraded[i].saturated ? "saturated" : degraded[i].y.str(10));
        os << "\n";
    }
    fs::path dir(o.out_dir);
    fs::create_directories(dir);
    fs::path file = dir / ("fig2_k" + std::to_string(o.k) + ".csv");
    write_file(file, os.str());
    std::cout << "wrote " << file.string() << "\n";
    return 0;
}

int cmd_refine_zeros(const CommonOpts& o, const std::string& seeds_path, long count) {
    long digits = o.refine_digits > 0 ? o.refine_digits : 120;
    std::ifstream in(seeds_path);
    if (!in) throw Error("cannot open seeds file: " + seeds_path);
    ZeroTable t = ingest_zero_table(in, ZeroTableFormat::plain_ordinates,
                                    fs::path(seeds_path).filename().string());
    if (count <= 0) count = t.count();
    if (count > t.count()) throw Error("seeds file has only " + std::to_string(t.count()));
    t.zeros.resize(static_cast<size_t>(count));
    if (count == 0) std::cerr << "warning: zero seeds requested; emitting an empty table\n";
    NumericContext ctx = context_for(o, digits);
    refine_table(t, digits, ctx, o.threads);
    attach_zeta_prime(t, ctx, o.threads);

    fs::path dir(o.out_dir);
    fs::create_directories(dir);
    fs::path file =
        dir / ("zeros_" + std::to_string(count) + "_" + std::to_string(digits) + "d.txt");
    std::ofstream out(file, std::ios::trunc);
    persist_table(t, out);
    std::cout << "wrote " << file.string() << "\n";

    if (count > 0) {
        Real max_resid(64);
        mpfr_set_zero(max_resid.raw(), 1);
        for (const auto& z : t.zeros)
            if (*z.residual > max_resid) max_resid = *z.residual;
        DerivativeExtremes ext = scan_derivative_extremes(t, 1, count);
        std::cout << "max residual:   " << max_resid.str(4) << "\n";
        std::cout << "min |zeta'|:    " << ext.min_value.str(11) << " at l = " << ext.min_index
                  << "\n";
        std::cout << "max |zeta'|:    " << ext.max_value.str(11) << " at l = " << ext.max_index
                  << "\n";
    }
    return 0;
}

int cmd_scan_zeta_prime(const CommonOpts& o, long l_min, long l_max) {
    if (o.zeros_file.empty()) throw Error("--zeros-file is required");
    ZeroTable t = load_zero_file(o.zeros_file);
    if (l_max <= 0) l_max = t.count();
    DerivativeExtremes ext = scan_derivative_extremes(t, l_min, l_max);
    std::cout << "scan over l = " << l_min << ".." << l_max << "\n";
    std::cout << "min |zeta'| = " << ext.min_value.str(11) << " at l = " << ext.min_index << "\n";
    std::cout << "max |zeta'| = " << ext.max_value.str(11) << " at l = " << ext.max_index << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Baez-Duarte sequence laboratory: c_k by independent routes"};
    app.require_subcommand(1);
    CommonOpts o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--k", o.k, "sequence index k");
        sub->add_option("--digits", o.digits, "target digits of the final comparison");
        sub->add_option("--zeros-file", o.zeros_file, "seed or refined zero table");
        sub->add_option("--zeros-count", o.zeros_count, "number of zeros L to use");
        sub->add_option("--refine-digits", o.refine_digits, "precision for refined zeros");
        sub->add_option("--oversample", o.oversample, "oversampling factor (rational, default 2)");
        sub->add_option("--trace-stride", o.trace_stride, "trace/progress cadence in terms");
        sub->add_option("--checkpoint", o.checkpoint_path, "checkpoint file for the generic sum");
        sub->add_flag("--resume", o.resume, "resume from the checkpoint file");
        sub->add_option("--out-dir", o.out_dir, "output directory");
        sub->add_option("--threads", o.threads, "worker threads (0 = all)");
    };

    CLI::App* compare = app.add_subcommand("compare", "generic vs explicit c_k with agreement");
    add_common(compare);

    CLI::App* table1 = app.add_subcommand("table1", "partial-sum table of the generic sum");
    add_common(table1);

    CLI::App* fig1 = app.add_subcommand("fig1", "c_k with its envelope on a log-spaced k grid");
    add_common(fig1);
    long k_min = 1000, k_max = 1000000, samples = 61;
    fig1->add_option("--k-min", k_min, "grid start");
    fig1->add_option("--k-max", k_max, "grid end");
    fig1->add_option("--samples", samples, "grid points");

    CLI::App* fig2 = app.add_subcommand("fig2", "the y(n) agreement diagnostic");
    add_common(fig2);
    long degrade_to = 0;
    fig2->add_option("--degrade-derivatives-to", degrade_to,
                     "emit a second series with derivatives rounded to this many digits");

    CLI::App* refine = app.add_subcommand("refine-zeros", "refine seeds, verify, attach zeta'");
    add_common(refine);
    std::string seeds_path;
    long count = 0;
    refine->add_option("--seeds", seeds_path, "seed ordinates file")->required();
    refine->add_option("--count", count, "how many seeds to refine (0 = all)");

    CLI::App* scan = app.add_subcommand("scan-zeta-prime", "derivative extremes over a range");
    add_common(scan);
    long l_min = 1, l_max = 0;
    scan->add_option("--l-min", l_min, "first index");
    scan->add_option("--l-max", l_max, "last index (0 = table end)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compare->parsed()) return cmd_compare(o);
        if (table1->parsed()) return cmd_table1(o);
        if (fig1->parsed()) return cmd_fig1(o, k_min, k_max, samples);
        if (fig2->parsed()) return cmd_fig2(o, degrade_to);
        if (refine->parsed()) return cmd_refine_zeros(o, seeds_path, count);
        if (scan->parsed()) return cmd_scan_zeta_prime(o, l_min, l_max);
    } catch (const PrecisionError& e) {
        std::cerr << "precision error: " << e.what()
                  << "\nhint: rerun with at least " << e.required_digits << " digits\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
