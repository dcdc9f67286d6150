// Command-line driver for the self-similar vorticity laboratory.
//
//   sgflab verify        -- run the quadrature/identity test battery
//   sgflab evolve        -- time-step an initial field, write series + snapshot
//   sgflab fit           -- evolve, then fit decay rates on the tail
//   sgflab compare-alpha -- repeat one run across a list of alpha values

#include <iostream>

#include "CLI11.hpp"
#include "sgf/runner.hpp"

namespace {

void add_overrides(CLI::App* cmd, sgf::ExperimentConfig& cfg, std::string& config_path) {
    cmd->add_option("--config", config_path, "config file (sectioned key = value)");
    cmd->add_option("--output", cfg.output_dir, "output directory")->capture_default_str();
    cmd->add_option("--n", cfg.n, "grid points per axis")->capture_default_str();
    cmd->add_option("--box-length", cfg.box_length, "periodic box edge length")
        ->capture_default_str();
    cmd->add_option("--alpha", cfg.params.alpha, "elastic material constant")
        ->capture_default_str();
    cmd->add_option("--epsilon", cfg.params.epsilon, "fourth-order damping strength")
        ->capture_default_str();
    cmd->add_option("--T", cfg.params.T, "time shift")->capture_default_str();
    cmd->add_option("--theta", cfg.params.theta, "decay-rate parameter")->capture_default_str();
    cmd->add_option("--dt", cfg.params.dt, "time step")->capture_default_str();
    cmd->add_option("--t-end", cfg.params.t_end, "final time")->capture_default_str();
    cmd->add_option("--output-every", cfg.params.output_every, "sampling stride in steps")
        ->capture_default_str();
    cmd->add_option("--init", cfg.init_kind,
                    "initial data kind (profile-multiple | random-divfree | perturbed-profile)")
        ->capture_default_str();
    cmd->add_option("--amplitude", cfg.amplitude, "initial data amplitude")
        ->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    cmd->add_option("--alphas", cfg.alphas, "alpha list for compare-alpha")->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral laboratory for second-grade fluid vorticity decay"};
    app.require_subcommand(1);

    struct Sub {
        CLI::App* cmd;
        std::string mode;
        sgf::ExperimentConfig cfg;
        std::string config_path;
        // CLI values are applied on top of the config file, so remember which
        // options the user actually passed.
    };
    std::vector<std::unique_ptr<Sub>> subs;
    for (const char* mode : {"verify", "evolve", "fit", "compare-alpha"}) {
        auto sub = std::make_unique<Sub>();
        sub->mode = mode;
        sub->cmd = app.add_subcommand(mode);
        add_overrides(sub->cmd, sub->cfg, sub->config_path);
        subs.push_back(std::move(sub));
    }

    CLI11_PARSE(app, argc, argv);

    try {
        for (auto& sub : subs) {
            if (!sub->cmd->parsed()) continue;
            sgf::ExperimentConfig cfg;
            if (!sub->config_path.empty()) cfg = sgf::load_config(sub->config_path);
            // Re-apply command-line values on top of the file.
            for (const auto* opt : sub->cmd->get_options()) {
                if (opt->count() == 0) continue;
                const std::string& name = opt->get_name();
                if (name == "--config") continue;
                if (name == "--output") cfg.output_dir = sub->cfg.output_dir;
                else if (name == "--n") cfg.n = sub->cfg.n;
                else if (name == "--box-length") cfg.box_length = sub->cfg.box_length;
                else if (name == "--alpha") cfg.params.alpha = sub->cfg.params.alpha;
                else if (name == "--epsilon") cfg.params.epsilon = sub->cfg.params.epsilon;
                else if (name == "--T") cfg.params.T = sub->cfg.params.T;
                else if (name == "--theta") cfg.params.theta = sub->cfg.params.theta;
                else if (name == "--dt") cfg.params.dt = sub->cfg.params.dt;
                else if (name == "--t-end") cfg.params.t_end = sub->cfg.params.t_end;
                else if (name == "--output-every")
                    cfg.params.output_every = sub->cfg.params.output_every;
                else if (name == "--init") cfg.init_kind = sub->cfg.init_kind;
                else if (name == "--amplitude") cfg.amplitude = sub->cfg.amplitude;
                else if (name == "--seed") cfg.seed = sub->cfg.seed;
                else if (name == "--alphas") cfg.alphas = sub->cfg.alphas;
            }
            cfg.mode = sub->mode;
            return sgf::run_experiment(cfg);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
