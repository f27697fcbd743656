#include "presets.hpp"

#include <regex>
#include <stdexcept>

namespace fpinn::cli {

namespace {

IniConfig base_train_config() {
  IniConfig c;
  c.set("problem", "name", "dw_eq19");
  c.set("network", "hidden_layers", "7");
  c.set("network", "width", "20");
  c.set("estimator", "scheme", "gj2");
  c.set("estimator", "m", "16");
  c.set("training", "iterations", "10");
  c.set("training", "epochs", "5000");
  c.set("training", "lr", "1e-3");
  c.set("training", "weight_bd", "1");
  c.set("training", "weight_init", "1");
  c.set("training", "seed", "1");
  c.set("sampling", "n_interior", "5000");
  c.set("sampling", "n_boundary", "1000");
  c.set("sampling", "n_initial", "1000");
  c.set("sampling", "resample", "uniform");
  return c;
}

void apply_batch(IniConfig& c, const std::string& size) {
  if (size == "small") {
    c.set("sampling", "n_interior", "5000");
    c.set("sampling", "n_boundary", "1000");
    c.set("sampling", "n_initial", "1000");
  } else {  // large
    c.set("sampling", "n_interior", "10000");
    c.set("sampling", "n_boundary", "2000");
    c.set("sampling", "n_initial", "2000");
  }
}

}  // namespace

IniConfig preset_config(const std::string& name) {
  std::smatch m;

  // experiment grid on the warm-up diffusion-wave problem
  static const std::regex t1(R"(table1-(small|large)-(mc1|mc2|gj1|gj2)-m(\d+))");
  if (std::regex_match(name, m, t1)) {
    IniConfig c = base_train_config();
    apply_batch(c, m[1]);
    c.set("estimator", "scheme", m[2]);
    c.set("estimator", "m", m[3]);
    return c;
  }

  // parameterized diffusion-wave grid (T = 2, L = 3)
  static const std::regex t2(R"(table2-a([0-9.]+)-k(\d+)-l([0-9.]+)-(mc1|mc2|gj1|gj2)-m(\d+))");
  if (std::regex_match(name, m, t2)) {
    IniConfig c = base_train_config();
    c.set("problem", "name", "dw_eq24");
    c.set("problem", "alpha", m[1]);
    c.set("problem", "k_mode", m[2]);
    c.set("problem", "lambda", m[3]);
    c.set("training", "iterations", "3");
    c.set("estimator", "scheme", m[4]);
    c.set("estimator", "m", m[5]);
    return c;
  }

  // time-fractional Burgers with optional residual-adaptive sampling
  static const std::regex bg(R"(burgers-a([0-9.]+)-(mc2|gj2)-(rad|uniform))");
  if (std::regex_match(name, m, bg)) {
    IniConfig c = base_train_config();
    c.set("problem", "name", "burgers_eq26");
    c.set("problem", "alpha", m[1]);
    c.set("estimator", "scheme", m[2]);
    c.set("estimator", "m", "80");
    c.set("training", "iterations", "20");
    c.set("training", "epochs", "10000");
    c.set("training", "lr", "1e-4");
    c.set("training", "weight_init", "100");
    c.set("sampling", "n_interior", "1500");
    c.set("sampling", "n_boundary", "500");
    c.set("sampling", "n_initial", "500");
    c.set("sampling", "resample", std::string(m[3]) == "rad" ? "rad" : "uniform");
    c.set("sampling", "rad_fraction", "0.3");
    return c;
  }

  // desk-scale fixed presets
  if (name == "accept5-reduced") {
    IniConfig c = base_train_config();
    c.set("training", "iterations", "4");
    c.set("training", "epochs", "2500");
    return c;
  }
  if (name == "accept8-eq24") {
    IniConfig c = base_train_config();
    c.set("problem", "name", "dw_eq24");
    c.set("problem", "alpha", "1.75");
    c.set("problem", "k_mode", "1");
    c.set("problem", "lambda", "1");
    c.set("training", "iterations", "3");
    return c;
  }
  if (name == "accept8-burgers-rad" || name == "accept8-burgers-unif") {
    IniConfig c = base_train_config();
    c.set("problem", "name", "burgers_eq26");
    c.set("problem", "alpha", "1.8");
    c.set("estimator", "scheme", "mc2");
    c.set("estimator", "m", "16");
    c.set("training", "iterations", "6");
    c.set("training", "epochs", "1500");
    c.set("training", "lr", "1e-3");
    c.set("training", "weight_init", "100");
    c.set("sampling", "n_interior", "1500");
    c.set("sampling", "n_boundary", "500");
    c.set("sampling", "n_initial", "500");
    c.set("sampling", "resample", name.ends_with("rad") ? "rad" : "uniform");
    c.set("sampling", "rad_fraction", "0.3");
    return c;
  }
  if (name == "smoke") {
    IniConfig c = base_train_config();
    c.set("network", "hidden_layers", "2");
    c.set("network", "width", "8");
    c.set("training", "iterations", "2");
    c.set("training", "epochs", "40");
    c.set("estimator", "m", "4");
    c.set("sampling", "n_interior", "64");
    c.set("sampling", "n_boundary", "32");
    c.set("sampling", "n_initial", "32");
    return c;
  }

  throw std::invalid_argument("unknown preset: " + name);
}

std::vector<std::string> preset_examples() {
  return {
      "table1-small-gj2-m16",  "table1-small-gj2-m80",   "table1-small-mc2-m80",
      "table1-small-mc1-m640", "table1-large-gj1-m32",   "table2-a1.75-k1-l1-gj2-m16",
      "table2-a1.5-k2-l4-mc2-m80", "table2-a1.25-k4-l4-gj2-m80",
      "burgers-a1.8-mc2-rad",  "burgers-a1.1-gj2-uniform", "accept5-reduced",
      "accept8-eq24",          "accept8-burgers-rad",    "accept8-burgers-unif",
      "smoke",
  };
}

}  // namespace fpinn::cli
