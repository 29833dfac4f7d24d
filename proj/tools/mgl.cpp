#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mgl/formula_parse.hpp"
#include "mgl/model.hpp"
#include "mgl/pipeline.hpp"

namespace {

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) mgl::fail("IOError", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string readStdin() {
  std::ostringstream buf;
  buf << std::cin.rdbuf();
  return buf.str();
}

struct Common {
  bool ascii = false;
  bool useStdin = false;

  mgl::PrintStyle style() const {
    return ascii ? mgl::PrintStyle::Ascii : mgl::PrintStyle::Unicode;
  }
};

void printDerivation(const mgl::Derivation& d, const Common& c, bool trace,
                     const std::string& prefix = "") {
  if (d.status != "ok") {
    std::cout << prefix << "status: rejected\n" << prefix << "reason: " << d.reason << "\n";
    return;
  }
  if (trace) {
    std::istringstream tr(d.trace.render());
    std::string line;
    while (std::getline(tr, line)) std::cout << prefix << line << "\n";
  }
  if (d.logicalForm)
    std::cout << prefix << "logical-form: " << mgl::prettyPrint(d.logicalForm, c.style())
              << "\n";
  else
    std::cout << prefix << "normal-form: " << mgl::show(d.normalForm) << "\n";
  for (auto& p : d.presuppositions)
    std::cout << prefix << "presupposition: " << mgl::prettyPrint(p, c.style()) << "\n";
  for (auto& [key, logic] : d.referents) {
    std::cout << prefix << "referent: " << key << " = ";
    if (logic)
      std::cout << mgl::prettyPrint(logic, c.style()) << "\n";
    else
      std::cout << "<non-evaluable>\n";
  }
  if (d.alternatives > 0)
    std::cout << prefix << "alternatives: " << d.alternatives << "\n";
  std::cout << prefix << "status: ok\n";
}

std::vector<mgl::FormulaPtr> parseFormulaLines(const std::string& text) {
  std::vector<mgl::FormulaPtr> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    out.push_back(mgl::parseFormula(line));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"typed Hilbert-operator semantic composition toolkit"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("--ascii", common.ascii, "ascii formula output (default: unicode)");
  app.add_flag("--stdin", common.useStdin, "read the tree/formula text from stdin");

  // derive
  auto* derive = app.add_subcommand("derive", "compose one sentence tree");
  std::string lexPath, mode = "epsilon", treeText;
  bool trace = false;
  derive->add_option("--lexicon", lexPath, "lexicon file")->required();
  derive->add_option("--mode", mode, "gq|epsilon")
      ->check(CLI::IsMember({"gq", "epsilon"}));
  derive->add_option("--tree", treeText, "bracketed functor-argument tree");
  derive->add_flag("--trace", trace, "print the reduction trace");

  // translate
  auto* translate = app.add_subcommand("translate", "first-order / epsilon translation");
  std::string direction, formulaText;
  translate->add_option("--direction", direction, "fo2eps|eps2fo")
      ->required()
      ->check(CLI::IsMember({"fo2eps", "eps2fo"}));
  translate->add_option("--formula", formulaText, "formula text");

  // modelcheck
  auto* modelcheck = app.add_subcommand("modelcheck", "evaluate a formula in a finite model");
  std::string modelPath, mcFormula;
  modelcheck->add_option("--model", modelPath, "model file")->required();
  modelcheck->add_option("--formula", mcFormula, "formula text");

  // entail
  auto* entail = app.add_subcommand("entail", "finite counter-model search");
  int maxSize = 3;
  std::string premisesPath, conclusionText;
  entail->add_option("--max-size", maxSize, "maximum domain size");
  entail->add_option("--premises", premisesPath, "file with one premise per line")
      ->required();
  entail->add_option("--conclusion", conclusionText, "conclusion formula");

  // discourse
  auto* discourse = app.add_subcommand("discourse", "compose a sequence of sentences");
  std::string dLexPath, treesPath;
  discourse->add_option("--lexicon", dLexPath, "lexicon file")->required();
  discourse->add_option("trees", treesPath, "file with one tree per line");
  std::string dMode = "epsilon";
  discourse->add_option("--mode", dMode, "gq|epsilon")
      ->check(CLI::IsMember({"gq", "epsilon"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*derive) {
      if (common.useStdin) treeText = readStdin();
      if (treeText.empty()) mgl::fail("IOError", "no tree given (use --tree or --stdin)");
      mgl::Lexicon lex = mgl::loadLexicon(readFile(lexPath));
      mgl::ComposeMode m =
          mode == "gq" ? mgl::ComposeMode::Gq : mgl::ComposeMode::Epsilon;
      mgl::Derivation d = mgl::compose(lex, mgl::parseTree(treeText), m, nullptr, trace);
      printDerivation(d, common, trace);
      return d.status == "ok" ? 0 : 2;
    }

    if (*translate) {
      if (common.useStdin) formulaText = readStdin();
      if (formulaText.empty())
        mgl::fail("IOError", "no formula given (use --formula or --stdin)");
      mgl::FormulaPtr f = mgl::parseFormula(formulaText);
      if (direction == "fo2eps") {
        std::cout << mgl::prettyPrint(mgl::foToEpsilon(f), common.style()) << "\n";
      } else {
        auto back = mgl::epsilonToFo(f);
        if (!back) {
          std::cout << "NO-FO-EQUIVALENT\n";
          return 0;
        }
        std::cout << mgl::prettyPrint(*back, common.style()) << "\n";
      }
      return 0;
    }

    if (*modelcheck) {
      if (common.useStdin) mcFormula = readStdin();
      if (mcFormula.empty())
        mgl::fail("IOError", "no formula given (use --formula or --stdin)");
      mgl::FiniteModel m = mgl::parseModel(readFile(modelPath));
      std::cout << (mgl::evalInModel(m, mgl::parseFormula(mcFormula)) ? "true" : "false")
                << "\n";
      return 0;
    }

    if (*entail) {
      if (common.useStdin) conclusionText = readStdin();
      if (conclusionText.empty())
        mgl::fail("IOError", "no conclusion given (use --conclusion or --stdin)");
      auto premises = parseFormulaLines(readFile(premisesPath));
      auto res = mgl::entailsFinite(premises, mgl::parseFormula(conclusionText), maxSize);
      if (res.counterModel) {
        std::cout << "counter-model\n" << mgl::printModel(*res.counterModel);
      } else {
        std::cout << "none-up-to-" << maxSize << "\n";
      }
      return 0;
    }

    if (*discourse) {
      std::string treesText = common.useStdin ? readStdin() : readFile(treesPath);
      mgl::Lexicon lex = mgl::loadLexicon(readFile(dLexPath));
      std::vector<mgl::TreePtr> trees;
      std::istringstream in(treesText);
      std::string line;
      while (std::getline(in, line)) {
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        trees.push_back(mgl::parseTree(line));
      }
      mgl::ComposeMode m =
          dMode == "gq" ? mgl::ComposeMode::Gq : mgl::ComposeMode::Epsilon;
      auto ds = mgl::runDiscourse(lex, trees, m);
      bool anyRejected = false;
      for (size_t i = 0; i < ds.size(); ++i) {
        printDerivation(ds[i], common, false, "[" + std::to_string(i + 1) + "] ");
        if (ds[i].status != "ok") anyRejected = true;
      }
      return anyRejected ? 2 : 0;
    }
  } catch (const mgl::Error& e) {
    std::cout << "ERROR " << e.kind() << ": " << e.detail() << "\n";
    return 1;
  }
  return 1;
}
