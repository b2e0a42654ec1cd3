/*
   Copyright 2026 The mzw authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mzw/dsl.hpp"
#include "mzw/errors.hpp"

namespace {

mzw::dsl::SessionOptions make_options(const std::string& backend, const std::string& q, int order,
                                      unsigned long seed) {
    mzw::dsl::SessionOptions opts;
    if (backend == "sym" || backend == "symbolic") opts.backend = mzw::dsl::BackendKind::Symbolic;
    else if (backend == "frob" || backend == "frobenius") opts.backend = mzw::dsl::BackendKind::Frobenius;
    else throw mzw::Error(mzw::ErrorKind::BackendError, "unknown backend '" + backend + "'");
    opts.q = mzw::Rat(q);
    if (order > 0) opts.order = order;
    if (const char* env = std::getenv("MZW_SEED")) opts.seed = std::strtoul(env, nullptr, 10);
    if (seed != 0) opts.seed = seed;
    return opts;
}

void write_json_records(const std::string& path, const std::string& records) {
    if (path.empty()) return;
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open '" << path << "' for writing\n";
        return;
    }
    f << records << "\n";
}

int run_file(const std::string& path, const mzw::dsl::SessionOptions& opts, const std::string& json_out) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open '" << path << "'\n";
        return 2;
    }
    std::stringstream buf;
    buf << f.rdbuf();
    const mzw::dsl::RunResult res = mzw::dsl::run_program_text(buf.str(), opts);
    std::cout << res.output;
    write_json_records(json_out, res.json_records);
    return res.exit_code;
}

int run_repl(const mzw::dsl::SessionOptions& opts, const std::string& json_out) {
    mzw::dsl::Session session(opts);
    std::string pending;
    std::string line;
    int worst = 0;
    std::cout << "mzw> " << std::flush;
    while (std::getline(std::cin, line)) {
        pending += line;
        pending += "\n";
        if (pending.find(';') != std::string::npos) {
            try {
                const mzw::dsl::Program prog = mzw::dsl::parse_program(pending);
                for (const auto& s : prog.stmts) {
                    std::string out;
                    worst = std::max(worst, session.run_stmt(s, out));
                    std::cout << out;
                }
            } catch (const std::exception& e) {
                std::cout << "error: " << e.what() << "\n";
                worst = std::max(worst, 2);
            }
            pending.clear();
        }
        std::cout << "mzw> " << std::flush;
    }
    std::cout << "\n";
    std::string arr = "[";
    for (size_t i = 0; i < session.records().size(); ++i) {
        if (i) arr += ",";
        arr += session.records()[i];
    }
    arr += "]";
    write_json_records(json_out, arr);
    return worst;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mzw: exact zeta functions, determinants and functional equations of graded and symbolic objects"};
    app.require_subcommand(1);

    std::string backend = "frob";
    std::string q = "2";
    int order = 0;
    unsigned long seed = 0;
    std::string json_out;

    app.add_option("--backend", backend, "backend: sym|frob (default frob)");
    app.add_option("--q", q, "realization parameter for geometric constructors (default 2)");
    app.add_option("--order", order, "default window order for checks");
    app.add_option("--seed", seed, "seed recorded in the session (MZW_SEED overrides)");
    app.add_option("--json", json_out, "write per-command JSON records to this file");

    std::string file;
    CLI::App* run = app.add_subcommand("run", "run a .mz program");
    run->add_option("file", file, "program file")->required();
    CLI::App* repl = app.add_subcommand("repl", "interactive session");

    CLI11_PARSE(app, argc, argv);

    try {
        const mzw::dsl::SessionOptions opts = make_options(backend, q, order, seed);
        if (run->parsed()) return run_file(file, opts, json_out);
        if (repl->parsed()) return run_repl(opts, json_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
