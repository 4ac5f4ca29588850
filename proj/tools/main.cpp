// mubkit: canonical MUB / SIC construction, design certification, Clifford
// group enumeration, and orbit experiments over prime-power dimensions.
//
// Exit codes: 0 success (all requested checks pass), 1 a requested check
// failed, 2 usage or input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mubkit/errors.hpp"
#include "mubkit/parallel.hpp"
#include "mubkit/serialize.hpp"

namespace {

struct Options {
    int threads = 0;
    bool verbose = false;

    // gen
    std::string gen_kind;
    int gen_q = 3;
    bool gen_hesse = false;
    std::string gen_out;

    // check
    std::string check_in;
    std::vector<std::string> check_tests;
    double check_tol = 1e-8;

    // orbit
    int orbit_q = 2;
    std::string orbit_seed = "mub0";
    std::uint64_t orbit_rng_seed = 0;
    std::string orbit_out;

    // group
    int group_q = 2;
    std::string group_out;

    // verify-theorem1
    int verify_q = 2;
    int verify_samples = 5;
    std::uint64_t verify_rng_seed = 0;
    std::string verify_out;
};

/// Supported prime-power dimensions and their (p, n) decomposition.
mubkit::Field field_for_q(int q) {
    switch (q) {
        case 2: return mubkit::Field(2, 1);
        case 3: return mubkit::Field(3, 1);
        case 4: return mubkit::Field(2, 2);
        case 5: return mubkit::Field(5, 1);
        case 7: return mubkit::Field(7, 1);
        case 8: return mubkit::Field(2, 3);
        case 9: return mubkit::Field(3, 2);
        default: throw mubkit::DomainError("q must be a prime power <= 9");
    }
}

void emit(const nlohmann::json &j, const std::string &out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw mubkit::DomainError("cannot write '" + out_path + "'");
    out << text;
}

class Timer {
  public:
    explicit Timer(bool enabled, std::string label)
        : enabled_(enabled), label_(std::move(label)), start_(std::chrono::steady_clock::now()) {}
    ~Timer() {
        if (!enabled_) return;
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start_)
                            .count();
        std::cerr << label_ << ": " << ms << " ms\n";
    }

  private:
    bool enabled_;
    std::string label_;
    std::chrono::steady_clock::time_point start_;
};

int run_gen(const Options &opt) {
    if (opt.gen_kind == "mub") {
        const mubkit::Field f = field_for_q(opt.gen_q);
        Timer t(opt.verbose, "gen mub q=" + std::to_string(opt.gen_q));
        emit(mubkit::to_json(mubkit::canonical_mub(f)), opt.gen_out);
        return 0;
    }
    if (opt.gen_kind == "sic") {
        if (opt.gen_q != 3)
            throw mubkit::DomainError("only the dimension-three fiducial set is supported");
        Timer t(opt.verbose, "gen sic");
        emit(mubkit::to_json(mubkit::hesse_sic()), opt.gen_out);
        return 0;
    }
    throw mubkit::DomainError("gen expects 'mub' or 'sic'");
}

int run_check(const Options &opt) {
    const nlohmann::json input = mubkit::load_json_file(opt.check_in);
    const mubkit::StateSet set = mubkit::state_set_from_json(input);

    std::vector<std::string> tests = opt.check_tests;
    if (tests.empty()) tests = {"design2"};

    nlohmann::json reports = nlohmann::json::array();
    bool all_pass = true;
    for (const std::string &name : tests) {
        mubkit::DesignReport report;
        if (name == "mub") report = mubkit::check_mub(set, opt.check_tol);
        else if (name == "design2") report = mubkit::check_2design(set, opt.check_tol);
        else if (name == "sic") report = mubkit::check_sic(set, opt.check_tol);
        else if (name == "frame") report = mubkit::check_tight_frame(set, opt.check_tol);
        else throw mubkit::DomainError("unknown test '" + name + "' (use mub, design2, sic, frame)");
        all_pass = all_pass && report.pass;
        reports.push_back(mubkit::to_json(report));
    }
    const nlohmann::json doc = {
        {"kind", "check_report"}, {"all_pass", all_pass}, {"reports", reports}};
    std::cout << doc.dump(2) << "\n";
    return all_pass ? 0 : 1;
}

int run_orbit(const Options &opt) {
    const mubkit::Field f = field_for_q(opt.orbit_q);
    Eigen::VectorXcd seed;
    if (opt.orbit_seed == "mub0") {
        seed = mubkit::canonical_mub(f).states[0];
    } else if (opt.orbit_seed == "hesse") {
        if (opt.orbit_q != 3) throw mubkit::DomainError("the fiducial seed needs --q 3");
        seed = mubkit::hesse_sic().states[0];
    } else if (opt.orbit_seed == "random") {
        std::mt19937_64 gen(opt.orbit_rng_seed);
        seed = mubkit::haar_random_state(f.q(), gen);
    } else if (opt.orbit_seed.rfind("file:", 0) == 0) {
        const mubkit::StateSet set =
            mubkit::state_set_from_json(mubkit::load_json_file(opt.orbit_seed.substr(5)));
        if (set.states.empty()) throw mubkit::DomainError("seed file holds no states");
        seed = set.states[0];
    } else {
        throw mubkit::DomainError("--seed-state must be mub0, hesse, random, or file:<path>");
    }

    Timer t(opt.verbose, "orbit q=" + std::to_string(opt.orbit_q));
    const mubkit::Orbit o = mubkit::orbit(seed, mubkit::clifford_generators(f), f);
    nlohmann::json j = mubkit::to_json(o);
    j["design2"] = mubkit::to_json(mubkit::check_2design(o.states, 1e-7));
    if (opt.orbit_seed == "random") {
        j["rng"] = {{"engine", "mt19937_64"}, {"seed", opt.orbit_rng_seed}};
    }
    emit(j, opt.orbit_out);
    return 0;
}

int run_group(const Options &opt) {
    const mubkit::Field f = field_for_q(opt.group_q);
    Timer t(opt.verbose, "group q=" + std::to_string(opt.group_q));
    const mubkit::GroupTable table = mubkit::enumerate_group(f);
    emit(mubkit::group_stats_json(table), opt.group_out);
    return 0;
}

int run_verify(const Options &opt) {
    const mubkit::Field f = field_for_q(opt.verify_q);
    Timer t(opt.verbose, "verify-theorem1 q=" + std::to_string(opt.verify_q));
    const mubkit::Theorem1Report report =
        mubkit::theorem1_experiment(f, opt.verify_samples, opt.verify_rng_seed);
    emit(mubkit::to_json(report), opt.verify_out);
    return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
    Options opt;
    CLI::App app{"Constructions and certification tests for mutually unbiased bases,"
                 " symmetric informationally complete sets, and restricted Clifford"
                 " groups over prime-power dimensions q <= 9."};
    app.require_subcommand(1);
    app.add_option("--threads", opt.threads, "Worker thread cap (0 = hardware)")->capture_default_str();
    app.add_flag("-v,--verbose", opt.verbose, "Timing notes on standard error");

    CLI::App *gen = app.add_subcommand("gen", "Construct a state set and write it as JSON");
    gen->add_option("kind", opt.gen_kind, "mub or sic")->required();
    gen->add_option("--q", opt.gen_q, "Dimension (prime power <= 9)")->capture_default_str();
    gen->add_flag("--hesse", opt.gen_hesse, "Select the dimension-three fiducial set (sic only)");
    gen->add_option("--out", opt.gen_out, "Output path (default: standard output)");

    CLI::App *check = app.add_subcommand("check", "Run certification tests on a state-set file");
    check->add_option("--in", opt.check_in, "StateSet JSON file")->required();
    check->add_option("--tests", opt.check_tests, "Comma-separated: mub,design2,sic,frame")
        ->delimiter(',');
    check->add_option("--tol", opt.check_tol, "Residual tolerance")->capture_default_str();

    CLI::App *orb = app.add_subcommand("orbit", "Group orbit of a seed state");
    orb->add_option("--q", opt.orbit_q, "Dimension (prime power <= 9)")->required();
    orb->add_option("--seed-state", opt.orbit_seed, "mub0 | hesse | random | file:<path>")
        ->capture_default_str();
    orb->add_option("--rng-seed", opt.orbit_rng_seed, "Seed for random seed states")
        ->capture_default_str();
    orb->add_option("--out", opt.orbit_out, "Output path (default: standard output)");

    CLI::App *group = app.add_subcommand("group", "Enumerate the restricted Clifford group");
    group->add_option("--q", opt.group_q, "Dimension (prime power <= 9)")->required();
    group->add_option("--out", opt.group_out, "Output path (default: standard output)");

    CLI::App *verify =
        app.add_subcommand("verify-theorem1", "Minimal-orbit experiment with random seeds");
    verify->add_option("--q", opt.verify_q, "Dimension (prime power <= 9)")->required();
    verify->add_option("--samples", opt.verify_samples, "Number of random seed states")
        ->capture_default_str();
    verify->add_option("--rng-seed", opt.verify_rng_seed, "Random generator seed")
        ->capture_default_str();
    verify->add_option("--out", opt.verify_out, "Output path (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        // MUBKIT_THREADS primes the default; an explicit flag overrides it.
        if (app.count("--threads") > 0) mubkit::set_thread_budget(opt.threads);
        if (app.got_subcommand(gen)) return run_gen(opt);
        if (app.got_subcommand(check)) return run_check(opt);
        if (app.got_subcommand(orb)) return run_orbit(opt);
        if (app.got_subcommand(group)) return run_group(opt);
        if (app.got_subcommand(verify)) return run_verify(opt);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const mubkit::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
