#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sfa/analysis.hpp"
#include "sfa/csv.hpp"
#include "sfa/embedding.hpp"
#include "sfa/expansion.hpp"
#include "sfa/logistic.hpp"
#include "sfa/model.hpp"
#include "sfa/model_io.hpp"
#include "sfa/preprocessor.hpp"
#include "sfa/sphering.hpp"
#include "sfa/tolerances.hpp"

namespace {

struct GenOptions {
    sfa::LogisticConfig cfg;
    std::string out = "series.csv";
};

struct TrainOptions {
    std::string input;
    std::size_t m = 0;
    std::size_t tau = 1;
    std::string method = "svd";
    double eps = sfa::tol::kDefaultEpsilon;
    std::string out = "model.json";
};

struct ApplyOptions {
    std::string model_path;
    std::string series_path;
    std::size_t k = 1;
    std::size_t tau = 1;
    bool align = false;
    bool plot_data = false;
    std::string out = "y.csv";
};

struct ExperimentPlan {
    double q = 1.2;
    std::size_t length = 6000;
    std::size_t burn_in = 1000;
    double w0 = 0.6;
    std::uint64_t seed = 42;
    std::size_t tau = 1;
    std::vector<std::size_t> m_list = {2, 4, 8, 10, 12, 20, 30};
    std::vector<double> sigma_list = {0.0, 1e-10, 1e-8, 1e-6, 1e-4};
    std::vector<double> epsilon_list = {1e-6, 1e-7, 1e-9, 1e-12};
    std::string out_dir = "tables";
};

std::string format_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

void run_gen(const GenOptions& opt) {
    const std::vector<double> series = sfa::logistic_series(opt.cfg);
    sfa::write_series_csv(opt.out, series);
    std::cout << "generated " << series.size() << " samples: q=" << opt.cfg.q
              << " burn_in=" << opt.cfg.burn_in << " w0=" << opt.cfg.w0
              << " noise=" << format_g(opt.cfg.noise_sigma)
              << " seed=" << opt.cfg.seed << " -> " << opt.out << "\n";
}

// One full training pass: embed, fit the input stage, accumulate
// moments, train.  Shared by cmd_train and the sweeps.
struct TrainedCell {
    sfa::Embedded embedded;
    sfa::SfaModel model;
};

TrainedCell train_on_series(const std::vector<double>& series, std::size_t m,
                            std::size_t tau, sfa::Method method, double eps) {
    TrainedCell cell;
    cell.embedded = sfa::embed(series, {m, tau});
    const sfa::Preprocessor pre = sfa::fit_preprocessor(
        cell.embedded.samples, sfa::PreprocessMode::kSphere, m, eps);
    const sfa::TrainingMoments tm =
        sfa::accumulate_training(cell.embedded.samples, pre);
    cell.model = method == sfa::Method::kSvdSfa
                     ? sfa::train_svd_sfa(tm, pre, eps)
                     : sfa::train_gen_eig(tm, pre, eps);
    return cell;
}

void run_train(const TrainOptions& opt) {
    const std::vector<double> series = sfa::read_series_csv(opt.input);
    const sfa::Method method = opt.method == "gen" ? sfa::Method::kGenEig
                                                   : sfa::Method::kSvdSfa;
    const TrainedCell cell =
        train_on_series(series, opt.m, opt.tau, method, opt.eps);
    const sfa::SfaModel& model = cell.model;
    sfa::save_model(model, opt.out);

    std::cout << "method: " << sfa::to_string(model.method) << "\n"
              << "m: " << opt.m << "  tau: " << opt.tau
              << "  epsilon: " << format_g(model.epsilon) << "\n"
              << "M: " << model.expanded_dim << "\n"
              << "rank(B): " << model.rank_of_b << "\n"
              << "P: " << model.output_count() << "\n";
    std::cout << "lambda_1..5:";
    for (std::size_t j = 0; j < std::min<std::size_t>(5, model.eigenvalues.size()); ++j) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), " %.6g", model.eigenvalues[j]);
        std::cout << buf;
    }
    std::cout << "\n";
    std::cout << "unstable: " << (model.unstable ? "yes" : "no") << "\n";
    if (model.unstable)
        std::cout << "warning: B is rank deficient at the cutoff; GEN_EIG "
                     "outputs are unreliable (rank "
                  << model.rank_of_b << " < M " << model.expanded_dim << ")\n";
    std::cout << "saved model -> " << opt.out << "\n";
}

void run_apply(const ApplyOptions& opt) {
    const sfa::SfaModel model = sfa::load_model(opt.model_path);
    const std::vector<double> series = sfa::read_series_csv(opt.series_path);

    const std::size_t k = opt.plot_data ? 1 : opt.k;
    const bool want_align = opt.align || opt.plot_data;

    const sfa::Embedded emb =
        sfa::embed(series, {model.preprocessor.input_dim(), opt.tau});
    const sfa::Matrix y = sfa::apply_model(model, emb.samples, k);

    if (want_align) {
        std::vector<double> gamma(emb.t_index.size());
        for (std::size_t i = 0; i < gamma.size(); ++i)
            gamma[i] = sfa::driving_force(static_cast<double>(emb.t_index[i]));
        std::vector<double> y1(y.rows());
        for (std::size_t i = 0; i < y1.size(); ++i) y1[i] = y(i, 0);
        const sfa::Alignment al = sfa::align(gamma, y1);
        sfa::write_components_csv(opt.out, emb.t_index, y, &al.aligned);
        std::cout << "alignment: a=" << sfa::format_g17(al.a)
                  << " b=" << sfa::format_g17(al.b)
                  << " mse=" << sfa::format_g17(al.mse)
                  << " corr=" << sfa::format_g17(al.corr) << "\n";
    } else {
        sfa::write_components_csv(opt.out, emb.t_index, y);
    }
    std::cout << "wrote " << y.rows() << " rows x " << k << " components -> "
              << opt.out << "\n";
}

std::string err_cell(const std::exception& e) {
    std::string reason = e.what();
    for (char& c : reason)
        if (c == ',' || c == '\n') c = ';';
    return "ERR:" + reason;
}

void run_tables(const ExperimentPlan& plan) {
    for (std::size_t m : plan.m_list)
        if (m < 2) throw std::invalid_argument("tables: every m must be >= 2");
    for (double s : plan.sigma_list)
        if (!(s >= 0.0)) throw std::invalid_argument("tables: sigma must be >= 0");
    for (double e : plan.epsilon_list)
        if (!(e > 0.0 && e < 1.0))
            throw std::invalid_argument("tables: epsilon must lie in (0, 1)");

    std::filesystem::create_directories(plan.out_dir);
    const double eps = sfa::tol::kDefaultEpsilon;

    std::vector<std::string> header2 = {"m", "M"};
    std::vector<std::string> header3 = {"m"};
    for (double s : plan.sigma_list) {
        header2.push_back("sigma_" + format_g(s));
        header3.push_back("sigma_" + format_g(s));
    }

    std::vector<std::vector<std::string>> table1, table2, table3;
    for (std::size_t m : plan.m_list) {
        std::vector<std::string> row1 = {std::to_string(m)};
        std::vector<std::string> row2 = {std::to_string(m),
                                         std::to_string(sfa::expansion_dim(m))};
        std::vector<std::string> row3 = {std::to_string(m)};

        for (std::size_t j = 0; j < plan.sigma_list.size(); ++j) {
            const double sigma = plan.sigma_list[j];
            sfa::LogisticConfig cfg;
            cfg.q = plan.q;
            cfg.length = plan.length;
            cfg.burn_in = plan.burn_in;
            cfg.w0 = plan.w0;
            cfg.noise_sigma = sigma;
            cfg.seed = sfa::derive_seed(plan.seed, m, j, 0);
            try {
                const std::vector<double> series = sfa::logistic_series(cfg);
                const TrainedCell gen_cell = train_on_series(
                    series, m, plan.tau, sfa::Method::kGenEig, eps);
                const sfa::Matrix y_g =
                    sfa::apply_model(gen_cell.model, gen_cell.embedded.samples, 1);
                const sfa::SlownessReport rep_g = sfa::constraint_report(y_g);

                row2.push_back(std::to_string(gen_cell.model.rank_of_b));
                row3.push_back(sfa::format_g17(rep_g.decorrelation(0, 0)));

                if (sigma == 0.0) {
                    const TrainedCell svd_cell = train_on_series(
                        series, m, plan.tau, sfa::Method::kSvdSfa, eps);
                    const sfa::Matrix y_s = sfa::apply_model(
                        svd_cell.model, svd_cell.embedded.samples, 1);
                    const sfa::SlownessReport rep_s = sfa::constraint_report(y_s);
                    row1.push_back(std::to_string(gen_cell.model.output_count()));
                    row1.push_back(std::to_string(svd_cell.model.output_count()));
                    row1.push_back(sfa::format_g17(rep_g.mean[0]));
                    row1.push_back(sfa::format_g17(rep_s.mean[0]));
                    row1.push_back(sfa::format_g17(rep_g.decorrelation(0, 0)));
                    row1.push_back(sfa::format_g17(rep_s.decorrelation(0, 0)));
                    row1.push_back(sfa::format_g17(rep_g.eta[0]));
                    row1.push_back(sfa::format_g17(rep_s.eta[0]));
                }
            } catch (const std::exception& e) {
                row2.push_back(err_cell(e));
                row3.push_back(err_cell(e));
                if (sigma == 0.0)
                    while (row1.size() < 9) row1.push_back(err_cell(e));
            }
            std::cout << "cell m=" << m << " sigma=" << format_g(sigma)
                      << " done\n";
        }
        // A plan without sigma=0 leaves table1's measurement columns empty.
        while (row1.size() < 9) row1.push_back("ERR:no sigma=0 run in plan");
        table1.push_back(row1);
        table2.push_back(row2);
        table3.push_back(row3);
    }

    // Cutoff study: m=12, sigma=0, SVD_SFA, alignment error of y_1
    // against the drive for each epsilon.
    std::vector<std::vector<std::string>> etable;
    {
        sfa::LogisticConfig cfg;
        cfg.q = plan.q;
        cfg.length = plan.length;
        cfg.burn_in = plan.burn_in;
        cfg.w0 = plan.w0;
        cfg.noise_sigma = 0.0;
        cfg.seed = sfa::derive_seed(plan.seed, 12, 0, 0);
        for (std::size_t i = 0; i < plan.epsilon_list.size(); ++i) {
            const double e = plan.epsilon_list[i];
            std::vector<std::string> row = {format_g(e)};
            try {
                const std::vector<double> series = sfa::logistic_series(cfg);
                const TrainedCell cell = train_on_series(
                    series, 12, plan.tau, sfa::Method::kSvdSfa, e);
                const sfa::Matrix y =
                    sfa::apply_model(cell.model, cell.embedded.samples, 1);
                std::vector<double> gamma(cell.embedded.t_index.size());
                for (std::size_t t = 0; t < gamma.size(); ++t)
                    gamma[t] = sfa::driving_force(
                        static_cast<double>(cell.embedded.t_index[t]));
                std::vector<double> y1(y.rows());
                for (std::size_t t = 0; t < y1.size(); ++t) y1[t] = y(t, 0);
                row.push_back(sfa::format_g17(sfa::align(gamma, y1).mse));
            } catch (const std::exception& ex) {
                row.push_back(err_cell(ex));
            }
            etable.push_back(row);
        }
    }

    namespace fs = std::filesystem;
    sfa::write_table_csv((fs::path(plan.out_dir) / "table1.csv").string(),
                         {"m", "N_G", "N_S", "y1_mean_G", "y1_mean_S",
                          "y1_var_G", "y1_var_S", "eta_G", "eta_S"},
                         table1);
    sfa::write_table_csv((fs::path(plan.out_dir) / "table2.csv").string(),
                         header2, table2);
    sfa::write_table_csv((fs::path(plan.out_dir) / "table3.csv").string(),
                         header3, table3);
    sfa::write_table_csv((fs::path(plan.out_dir) / "epsilon.csv").string(),
                         {"epsilon", "mse"}, etable);
    std::cout << "wrote table1.csv table2.csv table3.csv epsilon.csv -> "
              << plan.out_dir << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Slow feature analysis over driven logistic-map series: "
                 "generate data, train (generalized-eigenproblem or "
                 "SVD-sphering route), apply models, and emit experiment "
                 "tables as CSV."};
    app.require_subcommand(1);

    GenOptions gen;
    CLI::App* cgen = app.add_subcommand("gen", "Generate a logistic-map series CSV");
    cgen->add_option("--q", gen.cfg.q, "Map parameter, in [0.1, 3.9]")
        ->capture_default_str();
    cgen->add_option("--length", gen.cfg.length, "Retained samples")
        ->capture_default_str();
    cgen->add_option("--burn-in", gen.cfg.burn_in, "Discarded leading samples")
        ->capture_default_str();
    cgen->add_option("--w0", gen.cfg.w0, "Initial value, in (0, 1)")
        ->capture_default_str();
    cgen->add_option("--noise", gen.cfg.noise_sigma, "Gaussian noise std")
        ->capture_default_str();
    cgen->add_option("--seed", gen.cfg.seed, "Noise seed")->capture_default_str();
    cgen->add_option("--out", gen.out, "Output CSV path")->capture_default_str();
    cgen->callback([&gen]() { run_gen(gen); });

    TrainOptions train;
    CLI::App* ctrain = app.add_subcommand("train", "Train a model on a series CSV");
    ctrain->add_option("input", train.input, "Series CSV (t,value)")
        ->required()
        ->check(CLI::ExistingFile);
    ctrain->add_option("--m", train.m, "Embedding dimension")->required();
    ctrain->add_option("--tau", train.tau, "Embedding delay")->capture_default_str();
    ctrain->add_option("--method", train.method, "Training route")
        ->check(CLI::IsMember({"gen", "svd"}))
        ->capture_default_str();
    ctrain->add_option("--eps", train.eps, "Eigenvalue cutoff ratio, in (0, 1)")
        ->capture_default_str();
    ctrain->add_option("--out", train.out, "Model JSON path")->capture_default_str();
    ctrain->callback([&train]() { run_train(train); });

    ApplyOptions apply;
    CLI::App* capply = app.add_subcommand("apply", "Apply a model to a series CSV");
    capply->add_option("model", apply.model_path, "Model JSON")
        ->required()
        ->check(CLI::ExistingFile);
    capply->add_option("series", apply.series_path, "Series CSV (t,value)")
        ->required()
        ->check(CLI::ExistingFile);
    capply->add_option("--k", apply.k, "Output components")->capture_default_str();
    capply->add_option("--tau", apply.tau, "Embedding delay")->capture_default_str();
    capply->add_flag("--align", apply.align,
                     "Append the aligned driving force and print the fit");
    capply->add_flag("--plot-data", apply.plot_data,
                     "Shorthand for --k 1 --align (plot-ready trace)");
    capply->add_option("--out", apply.out, "Output CSV path")->capture_default_str();
    capply->callback([&apply]() { run_apply(apply); });

    ExperimentPlan plan;
    CLI::App* ctables =
        app.add_subcommand("tables", "Run the parameter sweeps, emit CSV tables");
    ctables->add_option("--q", plan.q, "Map parameter")->capture_default_str();
    ctables->add_option("--length", plan.length, "Samples per run")
        ->capture_default_str();
    ctables->add_option("--burn-in", plan.burn_in, "Discarded leading samples")
        ->capture_default_str();
    ctables->add_option("--w0", plan.w0, "Initial value")->capture_default_str();
    ctables->add_option("--seed", plan.seed, "Plan seed")->capture_default_str();
    ctables->add_option("--tau", plan.tau, "Embedding delay")->capture_default_str();
    ctables->add_option("--m", plan.m_list, "Embedding dimensions (repeatable)")
        ->capture_default_str();
    ctables->add_option("--noise", plan.sigma_list, "Noise levels (repeatable)")
        ->capture_default_str();
    ctables->add_option("--eps", plan.epsilon_list,
                        "Cutoffs for the epsilon study (repeatable)")
        ->capture_default_str();
    ctables->add_option("--out", plan.out_dir, "Output directory")
        ->capture_default_str();
    ctables->callback([&plan]() { run_tables(plan); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
