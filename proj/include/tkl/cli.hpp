#pragma once

// Command line front end.  run() is an in-process entry point taking the
// argument vector without the program name; the binary wrapper forwards to
// it.  Exit codes: 0 yes/success, 1 no, 2 undecided or heuristic, 64 usage
// errors, 65 data errors.

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "density.hpp"
#include "eval.hpp"
#include "kernel.hpp"
#include "parser.hpp"
#include "seq_io.hpp"
#include "symbol.hpp"
#include "verdict.hpp"

namespace tkl::cli {

namespace detail {

inline Space parse_space(const std::string& s) {
    if (s == "disk") return Space::Disk;
    if (s == "halfplane") return Space::HalfPlane;
    throw Error(Errc::BadParameters, "space must be 'disk' or 'halfplane'");
}

inline int verdict_code(const TriVerdict& v) {
    if (v.is_yes()) return 0;
    if (v.is_no()) return 1;
    return 2;
}

inline std::string verdict_word(const TriVerdict& v) {
    if (v.is_yes()) return "YES";
    if (v.is_no()) return "NO";
    return "UNDECIDED";
}

inline SequenceRegistry build_registry(const std::vector<std::string>& defs,
                                       const std::vector<std::string>& attach) {
    SequenceRegistry reg;
    for (const std::string& def : defs) {
        const auto eq = def.find('=');
        if (eq == std::string::npos || eq == 0)
            throw Error(Errc::FormatError, "--seq expects label=spec, got '" + def + "'");
        reg.add(def.substr(0, eq), load_sequence(def.substr(eq + 1)));
    }
    for (const std::string& label : attach) {
        const auto it = reg.sequences.find(label);
        if (it == reg.sequences.end())
            throw Error(Errc::UnknownSeqRef, "--attach-density: no sequence '" + label + "'");
        reg.add_density(label, interior_density_estimate(star_transform(*it->second)));
    }
    return reg;
}

// Output sink: stdout by default, a file when --out is given.  File output
// starts with a generation-time comment unless suppressed.
class Sink {
public:
    Sink(const std::string& path, bool no_header, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw Error(Errc::IoError, "cannot write " + path);
            os_ = &file_;
            if (!no_header) {
                char buf[64];
                std::time_t t = std::time(nullptr);
                std::tm tm{};
                gmtime_r(&t, &tm);
                std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
                *os_ << "# generated " << buf << "\n";
            }
        }
    }
    std::ostream& os() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

inline std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

inline std::pair<double, double> parse_range(const std::string& s) {
    const auto c = s.find(':');
    if (c == std::string::npos)
        throw Error(Errc::FormatError, "range must look like lo:hi, got '" + s + "'");
    const double lo = tkl::detail::parse_num(s.substr(0, c), "range");
    const double hi = tkl::detail::parse_num(s.substr(c + 1), "range");
    if (!(hi > lo)) throw Error(Errc::FormatError, "range needs lo < hi");
    return {lo, hi};
}

} // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"generalized Toeplitz kernel toolkit"};
    app.name("tkl");
    // long-form help only: several subcommands take an option named --h,
    // which would collide with the default -h short flag (subcommands
    // inherit the parent's help flag spelling)
    app.set_help_flag("--help", "print this help message and exit");
    app.require_subcommand(1);
    int rc = 0;

    // options shared by the expression commands
    struct Common {
        std::string space = "disk";
        std::vector<std::string> seqs;
        std::vector<std::string> attach;
    };
    auto add_common = [](CLI::App* sub, Common& c) {
        sub->add_option("--space", c.space, "disk or halfplane")
            ->check(CLI::IsMember({"disk", "halfplane"}));
        sub->add_option("--seq", c.seqs, "register a sequence as label=spec (repeatable)");
        sub->add_option("--attach-density", c.attach,
                        "compute and attach an interior density for this label (repeatable)");
    };

    // normalize ----------------------------------------------------------
    auto norm = std::make_shared<Common>();
    auto norm_expr = std::make_shared<std::string>();
    {
        auto* sub = app.add_subcommand("normalize", "parse a symbol and print its canonical form");
        add_common(sub, *norm);
        sub->add_option("--expr", *norm_expr, "symbol expression")->required();
        sub->callback([&, norm, norm_expr]() {
            const auto reg = detail::build_registry(norm->seqs, norm->attach);
            out << print_symbol(parse_symbol(*norm_expr, detail::parse_space(norm->space), &reg))
                << "\n";
        });
    }

    // classify -----------------------------------------------------------
    auto cls = std::make_shared<Common>();
    auto cls_expr = std::make_shared<std::string>();
    {
        auto* sub = app.add_subcommand("classify",
                                       "report conj-Smirnov membership, boundedness, analyticity");
        add_common(sub, *cls);
        sub->add_option("--expr", *cls_expr, "symbol expression")->required();
        sub->callback([&, cls, cls_expr]() {
            const auto reg = detail::build_registry(cls->seqs, cls->attach);
            const SymbolExpr e =
                parse_symbol(*cls_expr, detail::parse_space(cls->space), &reg);
            const ClassVerdict sm = in_conj_smirnov(e);
            out << "conj-smirnov: " << to_string(sm) << "\n";
            out << "bounded: " << to_string(is_bounded(e)) << "\n";
            out << "analytic: " << (is_analytic_form(e) ? "yes" : "no") << "\n";
            rc = sm == ClassVerdict::Member ? 0 : sm == ClassVerdict::NotMember ? 1 : 2;
        });
    }

    // minimal-kernel -----------------------------------------------------
    auto mk = std::make_shared<Common>();
    auto mk_k = std::make_shared<std::string>();
    auto mk_theta = std::make_shared<std::string>();
    {
        auto* sub = app.add_subcommand(
            "minimal-kernel", "symbol of the smallest kernel containing an analytic function");
        add_common(sub, *mk);
        sub->add_option("--k", *mk_k, "analytic function")->required();
        sub->add_option("--theta2", *mk_theta, "inner function of the codomain E2 (default 1)");
        sub->callback([&, mk, mk_k, mk_theta]() {
            const auto reg = detail::build_registry(mk->seqs, mk->attach);
            const Space sp = detail::parse_space(mk->space);
            SpaceDescriptor cod = SpaceDescriptor::full_hardy();
            if (!mk_theta->empty())
                cod = SpaceDescriptor::invariant(parse_symbol(*mk_theta, sp, &reg));
            out << print_symbol(minimal_kernel_symbol(parse_symbol(*mk_k, sp, &reg), cod))
                << "\n";
        });
    }

    // maximal-vector -----------------------------------------------------
    auto mv = std::make_shared<Common>();
    auto mv_g = std::make_shared<std::string>();
    auto mv_p = std::make_shared<std::string>();
    auto mv_k = std::make_shared<std::string>();
    auto mv_theta = std::make_shared<std::string>();
    {
        auto* sub = app.add_subcommand("maximal-vector",
                                       "maximal vector of a kernel, or check a candidate with --k");
        add_common(sub, *mv);
        sub->add_option("--g", *mv_g, "kernel symbol")->required();
        sub->add_option("--p", *mv_p, "outer parameter (default 1)");
        sub->add_option("--k", *mv_k, "candidate vector to check instead of printing");
        sub->add_option("--theta2", *mv_theta, "inner function of the codomain E2 (default 1)");
        sub->callback([&, mv, mv_g, mv_p, mv_k, mv_theta]() {
            const auto reg = detail::build_registry(mv->seqs, mv->attach);
            const Space sp = detail::parse_space(mv->space);
            SpaceDescriptor cod = SpaceDescriptor::full_hardy();
            if (!mv_theta->empty())
                cod = SpaceDescriptor::invariant(parse_symbol(*mv_theta, sp, &reg));
            const SymbolExpr g = parse_symbol(*mv_g, sp, &reg);
            if (!mv_k->empty()) {
                const TriVerdict v =
                    is_maximal_vector(parse_symbol(*mv_k, sp, &reg), KernelRef(g, {}, cod));
                out << detail::verdict_word(v) << ": " << v.certificate << "\n";
                rc = detail::verdict_code(v);
                return;
            }
            const SymbolExpr p = mv_p->empty() ? SymbolExpr::one(sp)
                                               : parse_symbol(*mv_p, sp, &reg);
            out << print_symbol(maximal_vector(g, cod, p)) << "\n";
        });
    }

    // inclusion ----------------------------------------------------------
    auto inc = std::make_shared<Common>();
    auto inc_g = std::make_shared<std::string>();
    auto inc_h = std::make_shared<std::string>();
    {
        auto* sub = app.add_subcommand("inclusion", "is ker T_g contained in ker T_h?");
        add_common(sub, *inc);
        sub->add_option("--g", *inc_g, "first kernel symbol")->required();
        sub->add_option("--h", *inc_h, "second kernel symbol")->required();
        sub->callback([&, inc, inc_g, inc_h]() {
            const auto reg = detail::build_registry(inc->seqs, inc->attach);
            const Space sp = detail::parse_space(inc->space);
            const TriVerdict v =
                kernel_inclusion(parse_symbol(*inc_g, sp, &reg), parse_symbol(*inc_h, sp, &reg));
            out << detail::verdict_word(v) << ": " << v.certificate << "\n";
            rc = detail::verdict_code(v);
        });
    }

    // multiplier ---------------------------------------------------------
    auto mul = std::make_shared<Common>();
    auto mul_w = std::make_shared<std::string>();
    auto mul_g = std::make_shared<std::string>();
    auto mul_h = std::make_shared<std::string>();
    {
        auto* sub =
            app.add_subcommand("multiplier", "does w multiply ker T_g into ker T_h?");
        add_common(sub, *mul);
        sub->add_option("--w", *mul_w, "multiplier candidate")->required();
        sub->add_option("--g", *mul_g, "source kernel symbol")->required();
        sub->add_option("--h", *mul_h, "target kernel symbol")->required();
        sub->callback([&, mul, mul_w, mul_g, mul_h]() {
            const auto reg = detail::build_registry(mul->seqs, mul->attach);
            const Space sp = detail::parse_space(mul->space);
            const TriVerdict v =
                multiplier_check(parse_symbol(*mul_w, sp, &reg), parse_symbol(*mul_g, sp, &reg),
                                 parse_symbol(*mul_h, sp, &reg));
            out << detail::verdict_word(v) << ": " << v.certificate << "\n";
            rc = detail::verdict_code(v);
        });
    }

    // nontrivial ---------------------------------------------------------
    auto nt = std::make_shared<Common>();
    auto nt_phi = std::make_shared<std::string>();
    auto nt_g = std::make_shared<std::string>();
    auto nt_h = std::make_shared<std::string>();
    {
        auto* sub = app.add_subcommand(
            "nontrivial", "kernel nontriviality (--phi) or multiplier space (--g and --h)");
        add_common(sub, *nt);
        sub->add_option("--phi", *nt_phi, "kernel symbol");
        sub->add_option("--g", *nt_g, "source kernel symbol");
        sub->add_option("--h", *nt_h, "target kernel symbol");
        sub->callback([&, nt, nt_phi, nt_g, nt_h]() {
            const auto reg = detail::build_registry(nt->seqs, nt->attach);
            const Space sp = detail::parse_space(nt->space);
            TriVerdict v = TriVerdict::unknown("");
            if (!nt_phi->empty()) {
                v = kernel_nontrivial(parse_symbol(*nt_phi, sp, &reg));
            } else if (!nt_g->empty() && !nt_h->empty()) {
                v = multiplier_space_nontrivial(parse_symbol(*nt_g, sp, &reg),
                                                parse_symbol(*nt_h, sp, &reg));
            } else {
                throw Error(Errc::BadParameters, "need --phi, or both --g and --h");
            }
            out << detail::verdict_word(v) << ": " << v.certificate << "\n";
            rc = detail::verdict_code(v);
        });
    }

    // dichotomy ----------------------------------------------------------
    auto di_b = std::make_shared<double>(0.0);
    auto di_a = std::make_shared<double>(0.0);
    auto di_d = std::make_shared<double>(0.0);
    {
        auto* sub = app.add_subcommand(
            "dichotomy", "two-exponential multiplier space: nonzero iff b-a < 2*pi*D");
        sub->add_option("--b", *di_b, "larger exponent")->required();
        sub->add_option("--a", *di_a, "smaller exponent")->required();
        sub->add_option("--density", *di_d, "interior density D of the spectrum")->required();
        sub->callback([&, di_b, di_a, di_d]() {
            const TriVerdict v = example4_dichotomy(*di_b, *di_a, *di_d);
            const double t = *di_b - *di_a, thr = 2.0 * std::numbers::pi * *di_d;
            const char cmp = v.is_yes() ? '<' : v.is_no() ? '>' : '~';
            const std::string word = v.is_yes() ? "NONZERO" : v.is_no() ? "ZERO" : "UNDECIDED";
            char buf[128];
            std::snprintf(buf, sizeof buf, "%s (b-a = %.5g %c 2piD = %.5g)\n", word.c_str(), t,
                          cmp, thr);
            out << buf;
            rc = detail::verdict_code(v);
        });
    }

    // density ------------------------------------------------------------
    auto de_seq = std::make_shared<std::string>();
    auto de_side = std::make_shared<std::string>("interior");
    auto de_step = std::make_shared<double>(0.0);
    auto de_max = std::make_shared<double>(2.0);
    auto de_out = std::make_shared<std::string>();
    auto de_plot = std::make_shared<std::string>();
    auto de_nohdr = std::make_shared<bool>(false);
    {
        auto* sub = app.add_subcommand("density", "density of a point sequence (star transform "
                                                  "applied first)");
        sub->add_option("--seq", *de_seq, "sequence spec (generator or file)")->required();
        sub->add_option("--side", *de_side, "interior, exterior or lower-uniform")
            ->check(CLI::IsMember({"interior", "exterior", "lower-uniform"}));
        sub->add_option("--grid-step", *de_step, "slope grid resolution (default 1/64)");
        sub->add_option("--max-a", *de_max, "largest slope scanned");
        sub->add_option("--out", *de_out, "write the report to a file");
        sub->add_option("--plot-data", *de_plot, "write x, n(x)-a*x samples to a file");
        sub->add_flag("--no-header", *de_nohdr, "omit the generation-time comment");
        sub->callback([&, de_seq, de_side, de_step, de_max, de_out, de_plot, de_nohdr]() {
            StarStats stats;
            const PointSequence star = star_transform(load_sequence(*de_seq), &stats);
            DensityOptions opts;
            opts.step = *de_step;
            opts.max_a = *de_max;
            DensityReport rep;
            if (*de_side == "interior")
                rep = interior_density_estimate(star, opts);
            else if (*de_side == "exterior")
                rep = exterior_density_estimate(star, opts);
            else
                rep = lower_uniform_density(star);
            detail::Sink sink(*de_out, *de_nohdr, out);
            sink.os() << "D* = " << detail::fmt("%.6g", rep.value) << " ("
                      << to_string(rep.confidence) << ")\n";
            sink.os() << "side: " << to_string(rep.kind) << "\n";
            if (!rep.note.empty()) sink.os() << "note: " << rep.note << "\n";
            if (stats.dropped_imaginary_axis || stats.merged_duplicates)
                sink.os() << "star: dropped " << stats.dropped_imaginary_axis
                          << " imaginary-axis points, merged " << stats.merged_duplicates
                          << " duplicates\n";
            if (rep.kind != DensityReport::Kind::LowerUniform)
                sink.os() << "witness: slope " << detail::fmt("%.6g", rep.witness.a) << ", kept "
                          << rep.witness.kept_indices.size() << ", added "
                          << rep.witness.added_points.size() << ", deficit "
                          << detail::fmt("%.6g", rep.witness.deficit) << " at radius "
                          << detail::fmt("%.6g", rep.witness.radius) << "\n";
            if (!de_plot->empty()) {
                detail::Sink plot(*de_plot, *de_nohdr, out);
                const std::vector<double> pts = star.reals();
                plot.os() << "x,dev\n";
                for (double x : pts) {
                    char buf[80];
                    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x,
                                  counting_function(pts, x) - rep.value * x);
                    plot.os() << buf;
                }
            }
            rc = rep.confident() ? 0 : 2;
        });
    }

    // polya --------------------------------------------------------------
    auto po_seq = std::make_shared<std::string>();
    auto po_step = std::make_shared<double>(0.0);
    {
        auto* sub = app.add_subcommand("polya", "completeness-style verdict for a separated "
                                                "real sequence");
        sub->add_option("--seq", *po_seq, "sequence spec")->required();
        sub->add_option("--grid-step", *po_step, "slope grid resolution");
        sub->callback([&, po_seq, po_step]() {
            DensityOptions opts;
            opts.step = *po_step;
            const TriVerdict v = polya_verdict(star_transform(load_sequence(*po_seq)), opts);
            out << detail::verdict_word(v) << ": " << v.certificate << "\n";
            rc = detail::verdict_code(v);
        });
    }

    // eval ---------------------------------------------------------------
    auto ev = std::make_shared<Common>();
    auto ev_expr = std::make_shared<std::string>();
    auto ev_points = std::make_shared<std::size_t>(256);
    auto ev_range = std::make_shared<std::string>("-10:10");
    auto ev_out = std::make_shared<std::string>();
    auto ev_plot = std::make_shared<std::string>();
    auto ev_nohdr = std::make_shared<bool>(false);
    {
        auto* sub = app.add_subcommand("eval", "boundary trace of a symbol as CSV");
        add_common(sub, *ev);
        sub->add_option("--expr", *ev_expr, "symbol expression")->required();
        sub->add_option("--points", *ev_points, "number of boundary samples");
        sub->add_option("--range", *ev_range, "boundary range lo:hi (half-plane only)");
        sub->add_option("--out", *ev_out, "write CSV to a file");
        sub->add_option("--plot-data", *ev_plot, "write param,modulus samples to a file");
        sub->add_flag("--no-header", *ev_nohdr, "omit the generation-time comment");
        sub->callback([&, ev, ev_expr, ev_points, ev_range, ev_out, ev_plot, ev_nohdr]() {
            const auto reg = detail::build_registry(ev->seqs, ev->attach);
            const Space sp = detail::parse_space(ev->space);
            const SymbolExpr e = parse_symbol(*ev_expr, sp, &reg);
            EvalGrid grid = sp == Space::Disk
                                ? EvalGrid::disk_boundary(*ev_points)
                                : [&] {
                                      const auto [lo, hi] = detail::parse_range(*ev_range);
                                      return EvalGrid::line_boundary(lo, hi, *ev_points);
                                  }();
            const std::vector<cx> vals = symbol_boundary_eval(e, grid);
            detail::Sink sink(*ev_out, *ev_nohdr, out);
            sink.os() << "param,re,im,modulus,phase\n";
            for (std::size_t i = 0; i < vals.size(); ++i) {
                char buf[200];
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", grid.params[i],
                              vals[i].real(), vals[i].imag(), std::abs(vals[i]),
                              std::arg(vals[i]));
                sink.os() << buf;
            }
            if (!ev_plot->empty()) {
                detail::Sink plot(*ev_plot, *ev_nohdr, out);
                plot.os() << "param,modulus\n";
                for (std::size_t i = 0; i < vals.size(); ++i) {
                    char buf[100];
                    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", grid.params[i],
                                  std::abs(vals[i]));
                    plot.os() << buf;
                }
            }
        });
    }

    // spectrum -----------------------------------------------------------
    auto sx = std::make_shared<Common>();
    auto sx_expr = std::make_shared<std::string>();
    auto sx_range = std::make_shared<std::string>();
    auto sx_res = std::make_shared<std::size_t>(512);
    auto sx_out = std::make_shared<std::string>();
    auto sx_nohdr = std::make_shared<bool>(false);
    {
        auto* sub = app.add_subcommand(
            "spectrum", "boundary points where an inner function equals 1 (half-plane)");
        add_common(sub, *sx);
        sx->space = "halfplane";
        sub->add_option("--expr", *sx_expr, "inner symbol")->required();
        sub->add_option("--range", *sx_range, "search range lo:hi")->required();
        sub->add_option("--resolution", *sx_res, "initial sample count");
        sub->add_option("--out", *sx_out, "write points to a file");
        sub->add_flag("--no-header", *sx_nohdr, "omit the generation-time comment");
        sub->callback([&, sx, sx_expr, sx_range, sx_res, sx_out, sx_nohdr]() {
            const auto reg = detail::build_registry(sx->seqs, sx->attach);
            const auto [lo, hi] = detail::parse_range(*sx_range);
            const PointSequence seq = spectrum_sigma(
                parse_symbol(*sx_expr, detail::parse_space(sx->space), &reg), lo, hi, *sx_res);
            detail::Sink sink(*sx_out, *sx_nohdr, out);
            for (const cx& p : seq.points) {
                char buf[48];
                std::snprintf(buf, sizeof buf, "%.17g\n", p.real());
                sink.os() << buf;
            }
        });
    }

    // parse and dispatch -------------------------------------------------
    std::vector<std::string> argv_store;
    argv_store.push_back("tkl");
    for (auto& a : args) argv_store.push_back(a);
    std::vector<const char*> argv;
    argv.reserve(argv_store.size());
    for (auto& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 64;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 65;
    }
    return rc;
}

} // namespace tkl::cli
