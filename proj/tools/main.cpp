#include <iostream>

#include "CLI11.hpp"

#include "commands.hpp"

using namespace cmvkit::cli;

int main(int argc, char** argv) {
  CLI::App app{"cmvkit: forward and inverse spectral computations for CMV operators"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "sample a random Verblunsky window (JSON)");
  g->add_option("--seed", gen.seed, "RNG seed");
  g->add_option("--order", gen.order, "data order N the window must support");
  g->add_option("--k0", gen.k0, "anchor site");
  g->add_option("--radius", gen.radius, "sites on each side of k0 (default 2N+8)");
  g->add_option("--amax", gen.amax, "sampling disk radius, in [0, 1)");

  ForwardOptions fwd;
  auto* f = app.add_subcommand("forward", "moments, m/M/Phi and Green's function series");
  f->add_option("--window", fwd.window, "window JSON file, - for stdin");
  f->add_option("--k0", fwd.k0, "anchor site");
  f->add_option("--order", fwd.order, "series order N");
  f->add_flag("--csv", fwd.csv, "emit series as CSV rows");

  ReconstructOptions rec;
  auto* r = app.add_subcommand("reconstruct", "recover Verblunsky coefficients from forward data");
  r->add_option("--data", rec.data, "forward JSON file, - for stdin");
  r->add_option("--route", rec.route, "moments | right-m | left-M | full-gh | full-gg");
  r->add_option("--order", rec.order, "coefficient count (half routes) or data order (full routes)");
  r->add_option("--reference", rec.reference, "window JSON to compute residuals against");
  r->add_flag("--csv", rec.csv, "emit recovered coefficients as CSV rows");

  VerifyOptions ver;
  auto* v = app.add_subcommand("verify", "check a local uniqueness statement on two windows");
  v->add_option("--w1", ver.w1, "first window JSON")->required();
  v->add_option("--w2", ver.w2, "second window JSON")->required();
  v->add_option("--k0", ver.k0, "anchor site");
  v->add_option("--kind", ver.kind, "half-right | half-left | full-gh | full-gg");
  v->add_option("--order", ver.order, "maximal data order Nmax");
  v->add_option("--tol", ver.tol, "relative agreement tolerance");

  MatrixOptions mat;
  auto* m = app.add_subcommand("matrix", "dump the truncated operator as CSV");
  m->add_option("--window", mat.window, "window JSON file, - for stdin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  return guarded(
      [&] {
        if (*g) return cmd_gen(gen, std::cout);
        if (*f) return cmd_forward(fwd, std::cout, std::cerr);
        if (*r) return cmd_reconstruct(rec, std::cout, std::cerr);
        if (*v) return cmd_verify(ver, std::cout, std::cerr);
        return cmd_matrix(mat, std::cout);
      },
      std::cerr);
}
