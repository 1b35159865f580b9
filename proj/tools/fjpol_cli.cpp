// Command-line front end: load a graph, configure a model, test the
// polarizability conditions, synthesize polarizing prejudices, and emit
// report tables and arrow-plot data.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "fjpol/commands.hpp"

namespace {

void write_outputs(const fjpol::CommandOutput& out, const std::string& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& [name, content] : out.files) {
        const std::filesystem::path path = std::filesystem::path(dir) / name;
        std::ofstream f(path, std::ios::binary);
        if (!f) throw fjpol::IoError("cannot write " + path.string());
        f << content;
        if (!f) throw fjpol::IoError("failed writing " + path.string());
        std::cout << "wrote " << path.string() << "\n";
    }
    std::cout << out.summary;
}

void add_common(CLI::App* cmd, fjpol::RunConfig& rc, std::string& variant) {
    cmd->add_option("--graph", rc.graph_path, "edge-list file")->required();
    cmd->add_flag("--directed", rc.directed, "treat the edge list as directed");
    cmd->add_option("--variant", variant, "model variant: gfj, vfj, rfj")
        ->check(CLI::IsMember({"gfj", "vfj", "rfj"}));
    cmd->add_option("--lambda", rc.lambda_spec,
                    "susceptibilities: const:<c>, pagerank, pagerank-inv, file:<path>");
    cmd->add_option("--epsilon", rc.epsilon, "rescale margin for pagerank schemes");
    cmd->add_option("--seed", rc.seed, "seed for the uniform baseline and restarts");
    cmd->add_option("--out", rc.out_dir, "output directory");
    cmd->add_option("--format", rc.format, "table format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

fjpol::Variant parse_variant(const std::string& v) {
    if (v == "vfj") return fjpol::Variant::Vfj;
    if (v == "rfj") return fjpol::Variant::Rfj;
    return fjpol::Variant::Gfj;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Friedkin-Johnsen opinion dynamics: polarization analysis"};
    app.require_subcommand(1);

    fjpol::RunConfig rc;
    std::string variant = "gfj";
    std::string candidates_csv = "all";
    std::string candidate = "b2_t";
    std::string opinions_path;
    int steps = 1000;

    CLI::App* analyze = app.add_subcommand("analyze", "full candidate table and verdicts");
    add_common(analyze, rc, variant);
    analyze->add_option("--candidates", candidates_csv,
                        "comma list of b2_1,b2_t,v_gt1,v_ge1,heu,max_p23,b1_1,max_p4 or 'all'");
    analyze->add_flag("--dump-matrices", rc.dump_matrices, "also write W.csv and H.csv");

    CLI::App* arrows = app.add_subcommand("arrows", "per-node prejudice/final pairs");
    add_common(arrows, rc, variant);
    arrows->add_option("--candidate", candidate, "candidate name (or 'unif')");

    CLI::App* simulate = app.add_subcommand("simulate", "step-by-step trajectory");
    add_common(simulate, rc, variant);
    simulate->add_option("--opinions", opinions_path, "prejudice file")->required();
    simulate->add_option("--steps", steps, "step cap");

    CLI::App* conditions = app.add_subcommand("conditions", "polarizability verdicts only");
    add_common(conditions, rc, variant);

    CLI::App* dump = app.add_subcommand("dump-matrices", "write W.csv and H.csv");
    add_common(dump, rc, variant);

    CLI11_PARSE(app, argc, argv);
    rc.variant = parse_variant(variant);

    rc.candidates.clear();
    std::string tok;
    std::istringstream ss(candidates_csv);
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) rc.candidates.push_back(tok);

    try {
        if (analyze->parsed()) write_outputs(fjpol::cmd_analyze(rc), rc.out_dir);
        else if (arrows->parsed()) write_outputs(fjpol::cmd_arrows(rc, candidate), rc.out_dir);
        else if (simulate->parsed())
            write_outputs(fjpol::cmd_simulate(rc, opinions_path, steps), rc.out_dir);
        else if (conditions->parsed()) write_outputs(fjpol::cmd_conditions(rc), rc.out_dir);
        else if (dump->parsed()) write_outputs(fjpol::cmd_dump_matrices(rc), rc.out_dir);
    } catch (const fjpol::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const fjpol::ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return 3;
    } catch (const fjpol::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const fjpol::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
