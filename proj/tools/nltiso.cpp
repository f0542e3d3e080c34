/*
 * Copyright 2026 The nltiso Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv)
{
    using namespace nltiso;
    using namespace nltiso::cli;

    CLI::App app{"Online sparse non-linear topology identification from graph-connected time series"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "Flat key=value file with option defaults; command-line flags win");

    RunConfig rc;
    std::string step_rule = "normalized";
    app.add_option("--seed", rc.seed, "RNG seed for data generation");
    app.add_option("--lambda", rc.lambda, "Group-sparsity weight (default per experiment)");
    app.add_option("--gamma", rc.gamma, "Step size (default 10)");
    app.add_option("--kernel-var", rc.kernel_var, "Gaussian kernel variance (default per experiment)");
    app.add_option("--window", rc.window, "Retained kernel centers per group; 0 for unbounded")->capture_default_str();
    app.add_option("--order", rc.order, "Lag order P")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--method", rc.method, "Estimator for `estimate`")
        ->capture_default_str()
        ->check(CLI::IsMember({"nltiso", "tirso"}));
    app.add_option("--step-rule", step_rule, "Step size rule")
        ->capture_default_str()
        ->check(CLI::IsMember({"normalized", "constant"}));
    app.add_option("--threads", rc.threads, "Worker threads for node updates")->capture_default_str();
    app.add_option("--out-dir", rc.out_dir, "Directory for artifacts")->capture_default_str();
    app.add_option("--snapshot-every", rc.snapshot_every, "Adjacency snapshot cadence in steps; 0 disables")
        ->capture_default_str();
    app.add_option("--burn-in", rc.burn_in, "Steps skipped when averaging ISE")->capture_default_str();
    app.add_option("--nodes", rc.nodes, "Generator: number of series N (default 5)");
    app.add_option("--length", rc.length, "Generator: number of samples T (default 3000)");
    app.add_option("--edge-prob", rc.edge_prob, "Generator: edge probability (default 0.1)");
    app.add_option("--noise-var", rc.noise_var, "Generator: noise variance (default 0.01)");
    app.add_option("--tv-sparse", rc.tv_sparse, "Generator: sparse initial adjacency in time-varying mode");

    std::string gen_kind;
    auto* generate = app.add_subcommand("generate", "Generate a synthetic series with ground truth");
    generate->add_option("kind", gen_kind, "stationary | timevarying")
        ->required()
        ->check(CLI::IsMember({"stationary", "timevarying"}));

    EstimateArgs est;
    double resample = 0.0;
    auto* estimate = app.add_subcommand("estimate", "Estimate causal dependencies from a CSV file");
    estimate->add_option("--input", est.input, "Input CSV (one header row)")->required();
    estimate->add_flag("--time-column", est.time_column, "First column holds timestamps");
    estimate->add_option("--resample", resample, "Resample onto a uniform grid with this period (seconds)");
    estimate->add_flag("!--no-standardize", est.standardize, "Skip zero-mean/unit-variance scaling");
    estimate->add_option("--average-last", est.average_last, "Average the adjacency over the last K steps")
        ->capture_default_str();

    EvaluateArgs eval;
    auto* evaluate = app.add_subcommand("evaluate", "Score an adjacency estimate against ground truth");
    evaluate->add_option("--estimate", eval.estimate, "Adjacency CSV")->required();
    evaluate->add_option("--truth", eval.truth, "truth.json or adjacency CSV")->required();
    evaluate->add_option("--threshold", eval.threshold, "Edge threshold for CSV truth")->capture_default_str();
    evaluate->add_option("--k", eval.k, "Top-k entries scored (default: number of true edges)");
    evaluate->add_option("--ise", eval.ise, "ISE trace CSV to average");

    std::string exp_kind;
    auto* experiment = app.add_subcommand("experiment", "Reproduce a synthetic experiment end to end");
    experiment->add_option("name", exp_kind, "stationary | timevarying")
        ->required()
        ->check(CLI::IsMember({"stationary", "timevarying"}));

    CLI11_PARSE(app, argc, argv);
    rc.step_rule = step_rule == "constant" ? StepRule::constant : StepRule::normalized;
    if (estimate->parsed() && estimate->count("--resample") > 0)
        est.resample_period = resample;

    try {
        if (generate->parsed())
            return cmd_generate(rc, gen_kind);
        if (estimate->parsed())
            return cmd_estimate(rc, est);
        if (evaluate->parsed())
            return cmd_evaluate(rc, eval);
        if (experiment->parsed())
            return cmd_experiment(rc, exp_kind);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
