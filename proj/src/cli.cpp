#include "gvb/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "gvb/verma.hpp"

namespace gvb::cli {

namespace {

const Embedding& builtin_pair(const std::string& name) {
    if (name != "g2-so7") throw UsageError("unknown pair '" + name + "' (available: g2-so7)");
    static Embedding e = g2_in_so7();
    return e;
}

Cell text(const std::string& ascii, const std::string& latex) { return {Json(ascii), latex}; }
Cell text(const std::string& s) { return {Json(s), s}; }
Cell flag(bool b) { return {Json(b), b ? "yes" : "no"}; }
Cell number(long v) { return {Json(v), std::to_string(v)}; }
Cell math(const std::string& ascii, const std::string& latex) { return {Json(ascii), "$" + latex + "$"}; }

Cell mult_cell(const Mult& m) {
    if (m.infinite) return {Json("inf"), "$\\infty$"};
    return {Json(m.value.get_si()), m.value.get_str()};
}

std::string basis_name(const std::string& basis, int i, Style st) {
    if (st == Style::Latex) return "\\" + std::string(basis == "w" ? "omega" : basis) + "_{" + std::to_string(i + 1) + "}";
    return basis + std::to_string(i + 1);
}

bool single_token(const std::string& s) {
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] == '+' || s[i] == '-') return false;
    return true;
}

std::string cross_string(const IntVec& c) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
}

std::string weights_string(const IntWeights& ws) {
    if (ws.empty()) return "{}";
    std::string s;
    for (const auto& w : ws) s += (s.empty() ? "" : ", ") + cross_string(w);
    return s;
}

Json weights_json(const IntWeights& ws) {
    Json a = Json::array();
    for (const auto& w : ws) a.push_back(w);
    return a;
}

std::string psi(const Embedding& e, const std::vector<RF>& simple, Style st) {
    return weight_string(e.source->roots().simple_to_fundamental(simple), "psi", st);
}

Cell psi_cell(const Embedding& e, const std::vector<RF>& simple) {
    return math(psi(e, simple, Style::Ascii), psi(e, simple, Style::Latex));
}

bool numeric(const std::vector<RF>& w) {
    for (const auto& x : w)
        if (!x.is_constant()) return false;
    return true;
}

Parabolic require_parabolic(const JobSpec& job) {
    if (!job.parabolic) throw UsageError("--parabolic is required for " + job.command);
    return make_parabolic(builtin_pair(job.pair).target->roots(), *job.parabolic);
}

ResultDocument cmd_structure(const JobSpec& job) {
    const Embedding& e = builtin_pair(job.pair);
    const LieAlgebra& g = *e.target;
    ResultDocument doc;
    std::vector<AlgElement> seeds;
    for (int i = 0; i < e.source->rank(); ++i) {
        seeds.push_back(e.images[e.source->pos(i)]);
        seeds.push_back(e.images[e.source->neg(i)]);
    }
    auto r = generate_subalgebra(g, seeds);
    Json cartan = r.cartan_matrix;
    doc.tables.push_back({"subalgebra",
                          {"dim", "rank", "type", "cartan_matrix", "dynkin_index"},
                          {{number(r.dim), number(r.rank), text(r.type), {cartan, cartan.dump()},
                            text(to_string(e.dynkin_index))}}});
    Table proj{"projections", {"weight", "projection"}, {}};
    const RootSystem& rs = g.roots();
    for (int i = 0; i < rs.rank(); ++i) {
        std::vector<RF> w(rs.rank(), RF(0));
        w[i] = RF(1);
        auto im = e.project(rs.fundamental_to_simple(w));
        proj.rows.push_back({math(weight_string(w, "w", Style::Ascii), weight_string(w, "w", Style::Latex)), psi_cell(e, im)});
    }
    doc.tables.push_back(proj);
    UEAElement bar = (bar_casimir(e) * RF(36)).normal_ordered();
    UEAElement img = (image_casimir(e) * RF(12)).normal_ordered();
    doc.tables.push_back({"casimir",
                          {"name", "expansion"},
                          {{math("36*cbar1", "36\\bar c_{1}"), math(bar.str(), bar.str(Style::Latex))},
                           {math("12*i(cbar1)", "12\\,i(\\bar c_{1})"), math(img.str(), img.str(Style::Latex))}}});
    return doc;
}

ResultDocument cmd_conditions(const JobSpec& job) {
    const Embedding& e = builtin_pair(job.pair);
    std::vector<Parabolic> ps;
    if (job.parabolic)
        ps.push_back(make_parabolic(e.target->roots(), *job.parabolic));
    else
        ps = all_parabolics(e.target->roots());
    Table t{"conditions",
            {"parabolic", "bar_parabolic", "quotient_weights", "zero_in_C", "zero_in_C_prime", "condition_A",
             "weakly_compatible", "compatible", "finite_branching"},
            {}};
    for (const auto& p : ps) {
        ConeReport r = quotient_weights(p, e);
        Parabolic bar = induced_bar_parabolic(p, e);
        t.rows.push_back({text(p.str()), text(bar.str()), {weights_json(r.quotient_weights), "$" + weights_string(r.quotient_weights) + "$"},
                          flag(r.zero_in_c), flag(r.zero_in_c_prime), flag(r.condition_a), flag(r.weakly_compatible),
                          flag(r.compatible), flag(r.finite_branching)});
    }
    ResultDocument doc;
    doc.tables.push_back(t);
    return doc;
}

ResultDocument cmd_branch(const JobSpec& job) {
    const Embedding& e = builtin_pair(job.pair);
    Parabolic p = require_parabolic(job);
    auto lam = job_weight(job, e.target->rank());
    if (!numeric(lam)) throw UsageError("branch needs a numeric highest weight; substitute with --set");
    if (job.cutoff < 0) throw UsageError("--cutoff must be non-negative");
    ConeReport cr = quotient_weights(p, e);
    if (!cr.condition_a) throw CapabilityError("Condition A fails for " + p.str());
    Table t{"branching", {"mu", "degree", "multiplicity"}, {}};
    for (const auto& row : branch_up_to_degree(p, e, lam, job.cutoff))
        t.rows.push_back({psi_cell(e, row.mu), number(row.degree), mult_cell(row.mult)});
    ResultDocument doc;
    doc.tables.push_back({"parabolic", {"parabolic", "finite_branching"}, {{text(p.str()), flag(cr.finite_branching)}}});
    doc.tables.push_back(t);
    return doc;
}

ResultDocument cmd_singular(const JobSpec& job) {
    const Embedding& e = builtin_pair(job.pair);
    Parabolic p = require_parabolic(job);
    auto lam = job_weight(job, e.target->rank());
    GeneralizedVerma M(p, *e.target, lam);
    Parabolic bar = induced_bar_parabolic(p, e);
    std::vector<std::vector<RF>> ws;
    for (const auto& c : decompose_over_bar_levi(M.inducing(), e, bar.levi)) ws.push_back(c.weight);
    ConditionBReport b = strong_condition_b(e, ws);
    bool is_numeric = numeric(lam);
    if (is_numeric && !b.holds) {
        std::string msg = "strong Condition B fails:";
        for (const auto& [i, j] : b.failing) msg += " p1(" + psi(e, ws[i], Style::Ascii) + ") = p1(" + psi(e, ws[j], Style::Ascii) + ");";
        throw MathRefusal(msg);
    }
    ResultDocument doc;
    Json ineq = Json::array();
    for (const auto& q : b.inequalities) {
        ConditionBReport one;
        one.inequalities = {q};
        ineq.push_back(one.inequality_string());
    }
    doc.tables.push_back({"condition_b",
                          {"generic", "holds", "inequalities"},
                          {{flag(!is_numeric), flag(b.holds), {ineq, b.inequalities.empty() ? "" : "$" + b.inequality_string(Style::Latex) + "$"}}}});
    Table t{"vectors", {"index", "mu", "vector", "singular", "certificate", "roots"}, {}};
    long idx = 0;
    for (const auto& r : build_all_singular_vectors(M, e)) {
        std::string ascii = r.zero ? "0" : M.str(r.vector), latex = r.zero ? "0" : M.str(r.vector, Style::Latex);
        bool sing = !r.zero && verify_singular(M, e, r.vector).pass;
        Cell cert = text(""), roots = {Json::array(), ""};
        if (!r.zero) {
            auto c = shapovalov_certificate(M, e, M.to_uea(r.raw));
            cert = math(c.poly.str(), c.poly.str(Style::Latex));
            std::string rl;
            for (const auto& q : c.roots) {
                roots.value.push_back(to_string(q));
                rl += (rl.empty() ? "" : ", ") + to_string(q);
            }
            roots.latex = "$" + rl + "$";
        }
        t.rows.push_back({number(idx++), psi_cell(e, r.mu), math(ascii, latex), flag(sing), cert, roots});
    }
    doc.tables.push_back(t);
    return doc;
}

ResultDocument cmd_regress(const JobSpec& job) {
    ResultDocument doc;
    Table t{"regress", {"suite", "case", "pass", "detail"}, {}};
    for (const auto& c : run_suite(job.suite, job.data_dir.empty() ? default_data_dir() : job.data_dir)) {
        doc.ok &= c.pass;
        t.rows.push_back({text(c.suite), text(c.name), flag(c.pass), text(c.detail)});
    }
    doc.tables.push_back(t);
    return doc;
}

Json job_json(const JobSpec& job) {
    Json j;
    j["command"] = job.command;
    j["pair"] = job.pair;
    j["parabolic"] = job.parabolic ? Json(*job.parabolic) : Json();
    j["lambda"] = job.lambda;
    Json subs = Json::object();
    for (const auto& [k, v] : job.substitutions) subs[k] = to_string(v);
    j["substitutions"] = subs;
    j["cutoff"] = job.cutoff;
    j["suite"] = job.suite;
    j["format"] = job.format;
    return j;
}

std::string cell_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string latex_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '_' || c == '&' || c == '%' || c == '#') out += '\\';
        out += c;
    }
    return out;
}

std::string render_text(const ResultDocument& doc) {
    std::ostringstream os;
    for (const auto& t : doc.tables) {
        std::vector<std::size_t> width;
        for (const auto& c : t.columns) width.push_back(c.size());
        for (const auto& row : t.rows)
            for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], cell_text(row[i].value).size());
        auto line = [&](const std::vector<std::string>& cells) {
            std::string s;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                s += cells[i];
                if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size() + 2, ' ');
            }
            os << s << "\n";
        };
        os << "# " << t.name << "\n";
        line(t.columns);
        for (const auto& row : t.rows) {
            std::vector<std::string> cells;
            for (const auto& c : row) cells.push_back(cell_text(c.value));
            line(cells);
        }
        os << "\n";
    }
    return os.str();
}

std::string render_latex(const ResultDocument& doc) {
    std::ostringstream os;
    for (const auto& t : doc.tables) {
        os << "% " << t.name << "\n\\begin{tabular}{" << std::string(t.columns.size(), 'l') << "}\n\\hline\n";
        for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? " & " : "") << latex_escape(t.columns[i]);
        os << " \\\\\n\\hline\n";
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " & " : "") << row[i].latex;
            os << " \\\\\n";
        }
        os << "\\hline\n\\end{tabular}\n\n";
    }
    return os.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::string weight_string(const std::vector<RF>& coords, const std::string& basis, Style st) {
    std::string s;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const RF& c = coords[i];
        if (c.is_zero()) continue;
        std::string name = basis_name(basis, static_cast<int>(i), st), cs = c.str(st), body;
        std::string times = st == Style::Latex ? "" : "*";
        if (c == RF(1))
            body = name;
        else if (c == RF(-1))
            body = "-" + name;
        else if (single_token(cs))
            body = cs + times + name;
        else
            body = "(" + cs + ")" + times + name;
        s += (s.empty() || body[0] == '-' ? "" : "+") + body;
    }
    return s.empty() ? "0" : s;
}

IntVec parse_crossings(const std::string& s, int rank) {
    IntVec c;
    for (const auto& part : split(s, ',')) {
        if (part != "0" && part != "1") throw UsageError("bad crossing vector '" + s + "': entries must be 0 or 1");
        c.push_back(part[0] - '0');
    }
    if (static_cast<int>(c.size()) != rank)
        throw UsageError("bad crossing vector '" + s + "': expected " + std::to_string(rank) + " entries");
    return c;
}

std::pair<std::string, Rational> parse_substitution(const std::string& s) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == s.size()) throw UsageError("bad substitution '" + s + "', expected name=value");
    std::string name = s.substr(0, eq);
    try {
        return {name, parse_rational(s.substr(eq + 1))};
    } catch (const std::exception&) {
        throw UsageError("bad substitution value in '" + s + "'");
    }
}

std::vector<RF> job_weight(const JobSpec& job, int rank) {
    if (job.lambda.empty()) throw UsageError("--lambda is required for " + job.command);
    auto lam = parse_weight(job.lambda, "w", rank);
    std::set<std::string> declared;
    for (const auto& x : lam)
        for (const auto& v : x.vars()) declared.insert(v);
    for (const auto& [k, v] : job.substitutions)
        if (!declared.count(k)) throw UsageError("substitution for undeclared symbol '" + k + "'");
    if (job.substitutions.empty()) return lam;
    for (auto& x : lam) x = x.partial_eval(job.substitutions);
    return lam;
}

ResultDocument run_job(const JobSpec& job) {
    auto start = std::chrono::steady_clock::now();
    ResultDocument doc;
    if (job.command == "structure")
        doc = cmd_structure(job);
    else if (job.command == "conditions")
        doc = cmd_conditions(job);
    else if (job.command == "branch")
        doc = cmd_branch(job);
    else if (job.command == "singular")
        doc = cmd_singular(job);
    else if (job.command == "regress")
        doc = cmd_regress(job);
    else
        throw UsageError("unknown command '" + job.command + "'");
    doc.job = job_json(job);
    if (job.timing)
        doc.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return doc;
}

Json to_json(const ResultDocument& doc) {
    Json j;
    j["schema"] = kSchema;
    j["tool_version"] = kToolVersion;
    j["job"] = doc.job;
    Json results = Json::object();
    for (const auto& t : doc.tables) {
        Json rows = Json::array();
        for (const auto& row : t.rows) {
            Json r;
            for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = row[i].value;
            rows.push_back(r);
        }
        results[t.name] = rows;
    }
    j["results"] = results;
    j["ok"] = doc.ok;
    if (doc.elapsed_ms) j["timing"] = {{"elapsed_ms", *doc.elapsed_ms}};
    return j;
}

std::string render(const ResultDocument& doc, const std::string& format) {
    if (format == "json") return to_json(doc).dump(2) + "\n";
    if (format == "text") return render_text(doc);
    if (format == "latex") return render_latex(doc);
    throw UsageError("unknown format '" + format + "' (json, latex, text)");
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generalized Verma module branching for the pair G2 in so(7)"};
    app.require_subcommand(1);
    JobSpec job;
    std::string parabolic;
    std::vector<std::string> sets;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--pair", job.pair, "pair descriptor")->capture_default_str();
        sub->add_option("--format", job.format, "json, latex or text")->capture_default_str();
        sub->add_option("--out", job.out, "output path");
        sub->add_flag("--timing", job.timing, "record elapsed time");
    };
    auto weight_opts = [&](CLI::App* sub) {
        sub->add_option("--parabolic", parabolic, "crossing vector, e.g. 1,0,0");
        sub->add_option("--lambda", job.lambda, "highest weight, e.g. x1*w1+w2");
        sub->add_option("--set", sets, "substitution such as x1=10")->delimiter(',');
    };
    CLI::App* structure = app.add_subcommand("structure", "subalgebra, projections and Casimir expansions");
    CLI::App* conditions = app.add_subcommand("conditions", "cone conditions for one or all parabolics");
    CLI::App* branch = app.add_subcommand("branch", "branching multiplicities up to a symmetric degree");
    CLI::App* singular = app.add_subcommand("singular", "singular vectors with certificates");
    CLI::App* regress = app.add_subcommand("regress", "golden-file regression suites");
    for (auto* s : {structure, conditions, branch, singular, regress}) common(s);
    for (auto* s : {conditions, branch, singular}) weight_opts(s);
    branch->add_option("--cutoff", job.cutoff, "largest symmetric degree")->capture_default_str();
    regress->add_option("suite", job.suite, "structure, fd-tables, branching, singular, certificates or all")->required();
    regress->add_option("--data-dir", job.data_dir, "directory holding reference/");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    for (auto* s : app.get_subcommands()) job.command = s->get_name();
    try {
        if (!parabolic.empty()) job.parabolic = parse_crossings(parabolic, builtin_pair(job.pair).target->rank());
        for (const auto& s : sets) {
            auto [k, v] = parse_substitution(s);
            job.substitutions[k] = v;
        }
        ResultDocument doc = run_job(job);
        std::string text = render(doc, job.format);
        if (job.out.empty()) {
            out << text;
        } else {
            std::ofstream f(job.out);
            if (!f) throw UsageError("cannot open output file " + job.out);
            f << text;
        }
        if (!doc.ok) {
            for (const auto& t : doc.tables)
                for (const auto& row : t.rows)
                    if (t.name == "regress" && !row[2].value.get<bool>())
                        err << "mismatch: " << cell_text(row[0].value) << " / " << cell_text(row[1].value) << ": "
                            << cell_text(row[3].value) << "\n";
            return 4;
        }
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const MathRefusal& e) {
        err << "refused: " << e.what() << "\n";
        return 3;
    } catch (const CapabilityError& e) {
        err << "refused: " << e.what() << "\n";
        return 3;
    } catch (const PoleError& e) {
        err << "refused: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace gvb::cli
