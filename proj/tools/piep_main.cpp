// piep: two coupled waveguides with periodically modulated coupling.
//
//   piep simulate --config growth.cfg --out trace.csv
//   piep sweep-dz --config sweep.cfg > sweep.csv

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "piep/config.hpp"
#include "piep/csv.hpp"
#include "piep/energy.hpp"
#include "piep/errors.hpp"

namespace {

using namespace piep;

constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot read config '" + path + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void echo_metadata(const RunConfig& cfg, std::ostream& os) {
    std::istringstream all(serialize_config(cfg));
    for (std::string line; std::getline(all, line);) {
        const std::string key = line.substr(0, line.find(' '));
        if (std::find(cfg.defaulted.begin(), cfg.defaulted.end(), key) != cfg.defaulted.end())
            os << "# default " << line << '\n';
    }
    for (const auto& w : cfg.warnings) os << "# warning " << w << '\n';
}

std::string fmt(Complex z) { return format_number(z.real()) + (z.imag() < 0 ? " - " : " + ") + format_number(std::abs(z.imag())) + "i"; }
std::string fmt(const State& v) { return "(" + fmt(v[0]) + ", " + fmt(v[1]) + ")"; }

void report_spectrum(const char* label, const SystemParams& p, double ep_tol, std::ostream& os) {
    const SpectralData sd = spectral_decompose(build_generator(p), ep_tol);
    const OverlapInfo ov = eigen_overlap(sd);
    os << "[" << label << "]\n";
    os << "kappa = " << fmt(p.kappa) << '\n';
    os << "E1 = " << fmt(sd.e1) << '\n';
    os << "E2 = " << fmt(sd.e2) << '\n';
    os << "phi1 = " << fmt(sd.r1) << '\n';
    os << "phi2 = " << fmt(sd.r2) << '\n';
    if (sd.l1) os << "chi1 = " << fmt(*sd.l1) << '\n';
    if (sd.l2) os << "chi2 = " << fmt(*sd.l2) << '\n';
    os << "overlap = " << fmt(ov.overlap) << '\n';
    os << "abs_overlap = " << format_number(std::abs(ov.overlap)) << '\n';
    os << "c = " << fmt(ov.c_param) << '\n';
    os << "abs_c = " << format_number(std::abs(ov.c_param)) << '\n';
    os << "exceptional_point = " << (sd.is_defective ? "true" : "false") << '\n';
    if (!sd.is_defective) os << "period = " << format_number(optimal_period(p, ep_tol)) << '\n';
}

void report_ep(const SystemParams& p, double ep_tol, std::ostream& os) {
    const Generator gen = build_generator(p);
    const SpectralData sd = spectral_decompose(gen, ep_tol);
    if (!sd.is_defective)
        throw NotDefectiveError("|kappa|^2 - g^2 = " + format_number(std::norm(p.kappa) - p.g * p.g) +
                                " is outside ep_tol; generator is not defective");
    const JordanChain jc = jordan_chain(gen, sd.e1, ep_tol);
    os << "E = " << fmt(sd.e1) << '\n';
    os << "eigenvector = " << fmt(jc.eigenvector) << '\n';
    os << "adjoint = " << fmt(jc.adjoint) << '\n';
    os << "residual = " << format_number(jc.residual) << '\n';
}

struct Options {
    std::string config;
    std::string out;
    bool nonlinear = false;
};

int run(Command command, const Options& opt) {
    RunConfig cfg;
    try {
        cfg = parse_config(read_file(opt.config), command);
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    std::ofstream file;
    if (!opt.out.empty()) {
        file.open(opt.out, std::ios::binary | std::ios::trunc);
        if (!file) {
            std::cerr << "io error: cannot open '" << opt.out << "' for writing\n";
            return kExitConfig;
        }
    }
    std::ostream& out = opt.out.empty() ? std::cout : file;
    echo_metadata(cfg, opt.out.empty() ? std::cerr : std::cout);

    try {
        const Settings& s = cfg.settings;
        switch (command) {
            case Command::spectrum: {
                report_spectrum("outside", base_params(s), s.ep_tol, out);
                SystemParams in = base_params(s);
                in.kappa = kappa_in(s);
                report_spectrum("inside", in, s.ep_tol, out);
                break;
            }
            case Command::ep:
                report_ep(base_params(s), s.ep_tol, out);
                break;
            case Command::simulate:
                write_trace_csv(run_scenario(to_scenario(s, opt.nonlinear)), out);
                break;
            case Command::sweep_dz:
                write_grid_csv(sweep_perturbation_length(to_scenario(s, false), dz_grid(s)), out);
                break;
            case Command::sweep_grid:
                write_grid_csv(sweep_period_length(to_scenario(s, false), period_ratio_grid(s), dz_grid(s)), out);
                break;
        }
        out.flush();
        if (!out) {
            std::cerr << "io error: write failed" << (opt.out.empty() ? "" : " for '" + opt.out + "'") << '\n';
            return kExitConfig;
        }
    } catch (const DivergenceError& e) {
        std::cerr << "numerical error: state amplitude diverged at z = " << e.z() << ": " << e.what() << '\n';
        return kExitNumeric;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parametric instability near exceptional points"};
    app.require_subcommand(1);

    Options opt;
    const std::pair<const char*, Command> commands[] = {
        {"spectrum", Command::spectrum},   {"simulate", Command::simulate}, {"sweep-dz", Command::sweep_dz},
        {"sweep-grid", Command::sweep_grid}, {"ep", Command::ep},
    };
    const char* help[] = {
        "eigenvalues, eigenvectors, overlap and EP flag outside and inside the windows",
        "propagate one trajectory and write the trace CSV",
        "transmission ratio versus window length",
        "transmission ratio over (period / optimal period, window length)",
        "Jordan chain at the exceptional point",
    };
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < std::size(commands); ++i) {
        CLI::App* sub = app.add_subcommand(commands[i].first, help[i]);
        sub->add_option("--config", opt.config, "key = value configuration file")->required();
        sub->add_option("--out", opt.out, "output path (default stdout)");
        if (commands[i].second == Command::simulate)
            sub->add_flag("--nonlinear", opt.nonlinear, "saturable gain, RK4 integration");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }
    for (std::size_t i = 0; i < subs.size(); ++i)
        if (subs[i]->parsed()) return run(commands[i].second, opt);
    return kExitConfig;
}
