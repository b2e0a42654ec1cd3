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

#ifndef MZW_DSL_HPP
#define MZW_DSL_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mzw/frobenius.hpp"
#include "mzw/symbolic.hpp"

namespace mzw::dsl {

// --- abstract syntax --------------------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct CallArg {
    enum class Type { Number, List, Matrix, String, Expr };
    Type type = Type::Number;
    std::string key; // keyword, may be empty
    Rat number;
    std::vector<Rat> list;
    std::vector<std::vector<Rat>> matrix;
    std::string str;
    ExprPtr expr;
};

struct Expr {
    enum class Kind { Unit, IntLit, Lefschetz, Ident, Call, Sum, Tensor };
    Kind kind = Kind::Unit;
    long int_val = 0;   // IntLit
    int lef_power = 1;  // Lefschetz
    std::string name;   // Ident / Call
    std::vector<CallArg> args;
    ExprPtr lhs, rhs;   // Sum / Tensor
};

struct Command {
    enum class Kind { Zeta, CheckFunceq, CheckSelfdual, CheckC1, Det, Class, Count, Save, Load, SetBackend };
    Kind kind = Kind::Zeta;
    std::string name;          // object binding
    std::optional<int> order;  // --order
    bool classical = false;    // zeta --classical
    int dim = -1;              // selfdual --dim (required, >= 0)
    int pow_lo = 1, pow_hi = 1; // count --powers lo..hi
    std::string file;          // save/load
    std::string backend;       // set backend
};

struct Stmt {
    enum class Kind { Let, Command };
    Kind kind = Kind::Let;
    std::string name; // Let
    ExprPtr expr;     // Let
    Command command;
};

struct Program {
    std::vector<Stmt> stmts;
};

/// Parses a program; Error(ParseError) messages carry line, column and the
/// expected-token set.
Program parse_program(const std::string& text);

/// Canonical source form; parsing the result yields an equal AST.
std::string expr_str(const ExprPtr& e);
std::string stmt_str(const Stmt& s);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// --- evaluation -------------------------------------------------------------

enum class BackendKind { Symbolic, Frobenius };

struct SessionOptions {
    BackendKind backend = BackendKind::Frobenius;
    Rat q = Rat(2);              // realization parameter for constructors
    std::optional<int> order;    // default order override for checks
    unsigned long seed = 0;      // recorded; property-test harnesses read it
};

class Session {
  public:
    explicit Session(SessionOptions opts = {});

    /// Runs one statement, appending human-readable output lines. Returns the
    /// statement's exit severity: 0 ok, 1 check failed, 2 error (thrown as
    /// Error instead).
    int run_stmt(const Stmt& stmt, std::string& output);

    /// Session snapshot as canonical JSON (sorted keys, exact strings).
    std::string to_json() const;
    void load_json(const std::string& text);

    const SessionOptions& options() const { return opts_; }
    BackendKind backend() const { return backend_; }

    /// JSON records of the commands run so far (for --json).
    const std::vector<std::string>& records() const { return records_; }

  private:
    struct Binding {
        FrobObj frob;
        SymObject sym;
        std::string expr; // canonical, self-contained
    };

    FrobObj eval_frob(const ExprPtr& e) const;
    SymObject eval_sym(const ExprPtr& e) const;
    std::string resolve_expr(const ExprPtr& e) const;
    const Binding& lookup(const std::string& name) const;
    int run_command(const Command& cmd, std::string& output);

    SessionOptions opts_;
    BackendKind backend_;
    bool backend_locked_ = false; // set once bindings exist
    RegistryPtr registry_;
    std::map<std::string, Binding> bindings_;
    std::vector<std::string> records_;
};

struct RunResult {
    int exit_code = 0;
    std::string output;
    std::string json_records; // JSON array of per-command records
};

/// Parses and runs a whole program in a fresh session.
RunResult run_program_text(const std::string& text, const SessionOptions& opts = {});

} // namespace mzw::dsl

#endif
