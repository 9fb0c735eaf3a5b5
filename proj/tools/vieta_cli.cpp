// Command-line frontend.  Every number in JSON output is a decimal string
// so arbitrary-precision values survive any consumer; one record per line.
//
// Exit codes: 0 = success (proven-unsolvable verdicts included),
//             2 = invalid input, 3 = internal invariant violation.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vieta/vieta.hpp"

using json = nlohmann::ordered_json;
using namespace vieta;

namespace {

json to_json(const IntPoint& p) { return json{{"x", p.x.get_str()}, {"y", p.y.get_str()}}; }

json to_json(const RatPoint& p) { return json{{"x", p.x.get_str()}, {"y", p.y.get_str()}}; }

json to_json(const QuadElt& e) {
    return json{{"u", e.u.get_str()},
                {"v", e.v.get_str()},
                {"m", e.m.get_str()},
                {"d", std::to_string(e.d)},
                {"str", to_string(e)}};
}

json to_json(const DescentCertificate& cert) {
    json steps = json::array();
    for (const auto& s : cert.steps)
        steps.push_back(json{{"op", to_string(s.tag)}, {"to", to_json(s.point)}});
    return json{{"start", to_json(cert.start)},
                {"steps", std::move(steps)},
                {"terminal", to_json(cert.terminal)}};
}

Int parse_int(const std::string& s) {
    try {
        return Int(s);
    } catch (const std::invalid_argument&) {
        throw InputError("not an integer: '" + s + "'");
    }
}

struct Output {
    bool json_mode = false;
    std::string buffer;

    void record(const std::string& command, json params, json result,
                std::vector<std::string> errata = {}) {
        if (json_mode) {
            json rec{{"schema_version", "1"},
                     {"command", command},
                     {"params", std::move(params)},
                     {"result", std::move(result)},
                     {"errata", errata}};
            buffer += rec.dump();
            buffer += "\n";
        }
    }

    void human(const std::string& line) {
        if (!json_mode) {
            buffer += line;
            buffer += "\n";
        }
    }
};

std::string point_str(const IntPoint& p) { return to_string(p); }

RdFamily::Kind parse_family(const std::string& s) {
    if (s == "n2-1") return RdFamily::Kind::NsqMinus1;
    if (s == "n2-4") return RdFamily::Kind::NsqMinus4;
    if (s == "n2+2") return RdFamily::Kind::NsqPlus2;
    throw InputError("unknown family '" + s + "' (expected n2-1, n2-4 or n2+2)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact integral-point toolkit for x^2 - pxy + y^2 = q: jump chains, "
                 "descent certificates, solvability verdicts, Pell-conic actions, "
                 "quadratic-ring reductions and brute-force verification scans"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    Output out;
    unsigned threads = 0;
    std::string out_path;
    app.add_flag("--json", out.json_mode, "emit JSON-lines records");
    app.add_option("--threads", threads, "worker threads for scans (default: all cores)");
    app.add_option("--out", out_path, "also write the output bytes to this file");

    std::string p_s, q_s, x_s, y_s, a_s, b_s, m_s, t_s, k_s, u_s, v_s, n_s, nu_s, bound_s;
    long long j_arg = 0;
    unsigned long back = 0, fwd = 0;
    int d_arg = 1;
    std::string family_s;

    auto* cmd_classify = app.add_subcommand("classify", "theorem-backed solvability of (p,q)");
    cmd_classify->add_option("-p", p_s)->required();
    cmd_classify->add_option("-q", q_s)->required();

    auto* cmd_descend = app.add_subcommand("descend", "descent certificate from a point");
    cmd_descend->add_option("-p", p_s)->required();
    cmd_descend->add_option("-q", q_s)->required();
    cmd_descend->add_option("-x", x_s)->required();
    cmd_descend->add_option("-y", y_s)->required();

    auto* cmd_chain = app.add_subcommand("chain", "alternating jump chain through a point");
    cmd_chain->add_option("-p", p_s)->required();
    cmd_chain->add_option("-q", q_s)->required();
    cmd_chain->add_option("-x", x_s)->required();
    cmd_chain->add_option("-y", y_s)->required();
    cmd_chain->add_option("--back", back, "points backwards");
    cmd_chain->add_option("--fwd", fwd, "points forwards");

    auto* cmd_imo = app.add_subcommand("imo", "quotient (a^2+b^2)/(ab+1) with certificate");
    cmd_imo->add_option("-a", a_s)->required();
    cmd_imo->add_option("-b", b_s)->required();

    auto* cmd_param = app.add_subcommand("param", "rational point of C(m^2,m^2) from a slope");
    cmd_param->add_option("-m", m_s)->required();
    cmd_param->add_option("-t", t_s, "rational slope, or 'inf'")->required();

    auto* cmd_act = app.add_subcommand("pell-act", "unit action on a point of C(k,k)");
    cmd_act->add_option("-k", k_s)->required();
    cmd_act->add_option("-x", x_s)->required();
    cmd_act->add_option("-y", y_s)->required();
    cmd_act->add_option("-j", j_arg, "exponent (negative inverts)")->required();

    auto* cmd_reduce = app.add_subcommand("reduce", "unit-power reduction of (u+v sqrt(m))/d");
    cmd_reduce->add_option("-m", m_s)->required();
    cmd_reduce->add_option("-u", u_s)->required();
    cmd_reduce->add_option("-v", v_s)->required();
    cmd_reduce->add_option("--d", d_arg, "denominator 1 or 2");

    auto* cmd_nc = app.add_subcommand("norm-classify", "forced shape of a small norm value");
    cmd_nc->add_option("--family", family_s, "n2-1 | n2-4 | n2+2")->required();
    cmd_nc->add_option("-n", n_s)->required();
    cmd_nc->add_option("--nu", nu_s)->required();

    auto* cmd_scan = app.add_subcommand("scan", "brute-force verification scans");
    cmd_scan->require_subcommand(1);
    auto* scan_box = cmd_scan->add_subcommand("box", "all conic points in a box");
    scan_box->add_option("-p", p_s)->required();
    scan_box->add_option("-q", q_s)->required();
    scan_box->add_option("--bound", bound_s)->required();
    auto* scan_imo = cmd_scan->add_subcommand("imo", "all divisible pairs up to a bound");
    scan_imo->add_option("--bound", bound_s)->required();
    auto* scan_norm = cmd_scan->add_subcommand("norm", "|x^2-my^2| = nu solvability table");
    scan_norm->add_option("-m", m_s)->required();
    scan_norm->add_option("--bound", bound_s, "largest nu")->required();
    auto* scan_final = cmd_scan->add_subcommand("final-prop",
                                                "(x^2+2y^2)/(2xy+1) square-or-twice check");
    scan_final->add_option("--bound", bound_s)->required();

    auto* cmd_table1 = app.add_subcommand("table1", "regenerate the C_4 unit-orbit table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*cmd_classify) {
            Int p = parse_int(p_s), q = parse_int(q_s);
            auto v = classify(p, q);
            json wit = json::array();
            for (const auto& w : v.witnesses) wit.push_back(to_json(w));
            out.record("classify", {{"p", p.get_str()}, {"q", q.get_str()}},
                       {{"tag", to_string(v.tag)},
                        {"theorem_id", v.theorem_id},
                        {"notes", v.notes},
                        {"witnesses", std::move(wit)}});
            out.human("verdict: " + std::string(to_string(v.tag)) +
                      (v.theorem_id.empty() ? "" : " [" + v.theorem_id + "]"));
            if (!v.notes.empty()) out.human("  " + v.notes);
            for (const auto& w : v.witnesses) out.human("  witness " + point_str(w));
        } else if (*cmd_descend) {
            Conic c(parse_int(p_s), parse_int(q_s));
            auto cert = descend(c, {parse_int(x_s), parse_int(y_s)});
            if (!verify_certificate(cert)) {
                std::cerr << "descend: certificate failed replay\n";
                return 3;
            }
            out.record("descend",
                       {{"p", c.p.get_str()}, {"q", c.q.get_str()},
                        {"x", cert.start.x.get_str()}, {"y", cert.start.y.get_str()}},
                       to_json(cert));
            out.human("start    " + point_str(cert.start));
            for (const auto& s : cert.steps)
                out.human(std::string("  ") + to_string(s.tag) + " -> " + point_str(s.point));
            out.human("terminal " + point_str(cert.terminal));
        } else if (*cmd_chain) {
            Conic c(parse_int(p_s), parse_int(q_s));
            auto pts = chain(c, {parse_int(x_s), parse_int(y_s)}, back, fwd);
            json arr = json::array();
            for (const auto& pt : pts) arr.push_back(to_json(pt));
            out.record("chain",
                       {{"p", c.p.get_str()}, {"q", c.q.get_str()},
                        {"x", x_s}, {"y", y_s},
                        {"back", std::to_string(back)}, {"fwd", std::to_string(fwd)}},
                       {{"points", std::move(arr)}});
            for (const auto& pt : pts) out.human(point_str(pt));
        } else if (*cmd_imo) {
            Int a = parse_int(a_s), b = parse_int(b_s);
            auto k = imo_quotient(a, b);
            json params{{"a", a.get_str()}, {"b", b.get_str()}};
            if (!k) {
                out.record("imo", params, {{"divisible", false}});
                out.human("ab+1 does not divide a^2+b^2");
            } else {
                auto cert = imo_certify(a, b);
                if (!verify_certificate(cert.cert)) {
                    std::cerr << "imo: certificate failed replay\n";
                    return 3;
                }
                out.record("imo", params,
                           {{"divisible", true},
                            {"k", cert.k.get_str()},
                            {"root", cert.root.get_str()},
                            {"certificate", to_json(cert.cert)}});
                out.human("k = " + cert.k.get_str() + " = " + cert.root.get_str() + "^2");
                out.human("terminal " + point_str(cert.cert.terminal) + " after " +
                          std::to_string(cert.cert.steps.size()) + " steps");
            }
        } else if (*cmd_param) {
            Int m = parse_int(m_s);
            SlopeParam t = SlopeParam::infinity();
            if (t_s != "inf" && t_s != "infinity") {
                Rat r;
                try {
                    r = Rat(t_s);
                } catch (const std::invalid_argument&) {
                    throw InputError("not a rational slope: '" + t_s + "'");
                }
                if (r.get_den() == 0) throw InputError("slope denominator is zero");
                r.canonicalize();
                t = SlopeParam::finite(r);
            }
            auto pt = point_from_t(m, t);
            out.record("param", {{"m", m.get_str()}, {"t", t_s}},
                       {{"x", pt.x.get_str()}, {"y", pt.y.get_str()}});
            out.human("(" + pt.x.get_str() + ", " + pt.y.get_str() + ")");
        } else if (*cmd_act) {
            Int k = parse_int(k_s);
            auto pt = act(k, {parse_int(x_s), parse_int(y_s)}, j_arg);
            out.record("pell-act",
                       {{"k", k.get_str()}, {"x", x_s}, {"y", y_s},
                        {"j", std::to_string(j_arg)}},
                       to_json(pt));
            out.human(point_str(pt));
        } else if (*cmd_reduce) {
            Int m = parse_int(m_s);
            QuadElt xi(parse_int(u_s), parse_int(v_s), m, d_arg);
            auto fam = rd_family_of(m);
            if (!fam)
                throw UnsupportedRange(
                    "reduce: radicand outside the closed-form families n^2-1, n^2-4, n^2+2");
            QuadElt eps = rd_unit(*fam);
            auto r = reduce_by_unit(xi, eps);
            bool ok = reduction_bounds_hold(r);
            if (!ok) {
                std::cerr << "reduce: bound verification failed\n";
                return 3;
            }
            out.record("reduce",
                       {{"m", m.get_str()}, {"u", u_s}, {"v", v_s},
                        {"d", std::to_string(d_arg)}},
                       {{"j", std::to_string(r.j)},
                        {"reduced", to_json(r.reduced)},
                        {"unit", to_json(r.unit)},
                        {"nu", r.nu.get_str()},
                        {"bounds_verified", ok}});
            out.human("xi * eps^(" + std::to_string(r.j) + ") = " + to_string(r.reduced) +
                      "   (eps = " + to_string(r.unit) + ", nu = " + r.nu.get_str() + ")");
        } else if (*cmd_nc) {
            RdFamily f{parse_family(family_s), parse_int(n_s)};
            Int nu = parse_int(nu_s);
            auto v = small_norm_classify(f, nu);
            json res{{"shape", to_string(v.shape)}, {"threshold", v.threshold.get_str()}};
            if (v.exceptional) res["exceptional"] = v.exceptional->get_str();
            res["allowed"] = nu < v.threshold ? shape_allows(f, nu) : true;
            out.record("norm-classify",
                       {{"family", family_s}, {"n", n_s}, {"nu", nu.get_str()}}, res);
            out.human(std::string(to_string(v.shape)) +
                      (v.exceptional ? " (" + v.exceptional->get_str() + ")" : "") +
                      ", threshold " + v.threshold.get_str());
        } else if (*scan_box) {
            Conic c(parse_int(p_s), parse_int(q_s));
            auto rep = box_search(c, parse_int(bound_s), threads);
            json arr = json::array();
            for (const auto& pt : rep.hits) arr.push_back(to_json(pt));
            out.record("scan box",
                       {{"p", c.p.get_str()}, {"q", c.q.get_str()}, {"bound", bound_s}},
                       {{"hits", std::move(arr)},
                        {"exhaustiveness", rep.exhaustiveness_note}});
            for (const auto& pt : rep.hits) out.human(point_str(pt));
            out.human("(" + std::to_string(rep.hits.size()) + " points)");
        } else if (*scan_imo) {
            auto hits = imo_scan(parse_int(bound_s), threads);
            json arr = json::array();
            for (const auto& h : hits)
                arr.push_back(json{{"a", h.a.get_str()}, {"b", h.b.get_str()},
                                   {"k", h.k.get_str()}});
            out.record("scan imo", {{"bound", bound_s}}, {{"hits", std::move(arr)}});
            for (const auto& h : hits)
                out.human("a=" + h.a.get_str() + " b=" + h.b.get_str() + " k=" + h.k.get_str());
        } else if (*scan_norm) {
            auto rep = norm_scan(parse_int(m_s), parse_int(bound_s));
            json arr = json::array();
            for (const auto& e : rep.entries) {
                json entry{{"nu", e.nu.get_str()}};
                if (e.plus) entry["plus"] = to_json(*e.plus);
                if (e.minus) entry["minus"] = to_json(*e.minus);
                arr.push_back(std::move(entry));
            }
            out.record("scan norm", {{"m", m_s}, {"nu_max", bound_s}},
                       {{"entries", std::move(arr)},
                        {"exhaustiveness", rep.exhaustiveness_note}});
            for (const auto& e : rep.entries) {
                std::string line = "nu=" + e.nu.get_str() + ":";
                if (e.plus) line += " +" + point_str(*e.plus);
                if (e.minus) line += " -" + point_str(*e.minus);
                if (!e.solvable()) line += " unsolvable";
                out.human(line);
            }
        } else if (*scan_final) {
            auto rep = verify_final_prop(parse_int(bound_s), threads);
            json hits = json::array(), cx = json::array();
            for (const auto& h : rep.hits)
                hits.push_back(json{{"x", h.x.get_str()}, {"y", h.y.get_str()},
                                    {"k", h.k.get_str()}});
            for (const auto& h : rep.counterexamples)
                cx.push_back(json{{"x", h.x.get_str()}, {"y", h.y.get_str()},
                                  {"k", h.k.get_str()}});
            out.record("scan final-prop", {{"bound", bound_s}},
                       {{"hits", std::move(hits)}, {"counterexamples", std::move(cx)}});
            for (const auto& h : rep.hits)
                out.human("x=" + h.x.get_str() + " y=" + h.y.get_str() +
                          " k=" + h.k.get_str());
            out.human(rep.counterexamples.empty()
                          ? "no counterexamples: every quotient is a square or twice a square"
                          : "COUNTEREXAMPLES FOUND");
        } else if (*cmd_table1) {
            auto rows = regen_table1();
            json arr = json::array();
            std::vector<std::string> errata;
            for (const auto& r : rows) {
                json row{{"j", std::to_string(r.j)},
                         {"sign", r.sign > 0 ? "+" : "-"},
                         {"element", to_json(r.element)},
                         {"point", to_json(r.point)},
                         {"erratum", r.erratum()}};
                if (r.printed) {
                    row["printed"] = to_json(*r.printed);
                    row["printed_on_conic"] = r.printed_on_conic;
                    errata.push_back("row (" + std::string(r.sign > 0 ? "+" : "-") +
                                     ", j=" + std::to_string(r.j) + "): regenerated " +
                                     point_str(r.point) + " but commonly printed " +
                                     point_str(*r.printed) +
                                     (r.printed_on_conic ? " (on conic, wrong orbit slot)"
                                                         : " (not on the conic)"));
                }
                arr.push_back(std::move(row));
            }
            out.record("table1", json::object(), {{"rows", std::move(arr)}}, errata);
            for (const auto& r : rows) {
                std::string line = (r.sign > 0 ? "+" : "-") + std::string("eps^") +
                                   std::to_string(r.j) + " = " + to_string(r.element) +
                                   "  ->  " + point_str(r.point);
                if (r.erratum()) line += "   [erratum: printed " + point_str(*r.printed) + "]";
                out.human(line);
            }
        }
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }

    std::fputs(out.buffer.c_str(), stdout);
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 2;
        }
        f << out.buffer;
    }
    return 0;
}
