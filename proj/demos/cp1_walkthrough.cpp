// The rotated sphere end to end: chambers, the strong inequalities in both
// chambers, Hodge numbers, and the cut at the equator.

#include <iostream>

#include "eqmorse/eqmorse.hpp"

using namespace eqmorse;

int main() {
  Scenario s = corpus::cp1();
  auto chambers = scenario_chambers(s);
  std::cout << s.name << ": " << chambers.size() << " chambers\n";

  for (const auto& ch : chambers) {
    auto rep = verify_strong(s, ch);
    std::cout << "chamber " << ch->id() << " direction " << to_string(ch->direction()) << "\n";
    for (std::size_t k = 0; k < rep.lhs.size(); ++k) {
      std::cout << "  lhs t^" << k << ": ";
      for (const auto& [w, m] : rep.lhs.coeff(k).terms()) std::cout << to_string(m) << "*e^" << to_string(w) << ' ';
      std::cout << "...\n";
    }
    std::cout << "  strong inequalities " << (rep.passed() ? "hold" : "FAIL") << "\n";
  }

  HodgePolynomial p = assemble_hodge(s, chambers.front());
  std::cout << "P(M; s, t) = " << p.to_string() << "\n" << io::hodge_markdown(p);

  CutScenario cut = corpus::cp1_cut();
  auto glue = glue_check(cut);
  std::cout << "cut at 0: P(M+) = " << glue.plus.to_string() << ", P(M-) = " << glue.minus.to_string()
            << ", gluing " << (glue.passed() ? "holds" : "FAILS") << "\n";
  auto q = quantization_morse_check(cut);
  std::cout << "invariant quantization inequalities " << (q.passed() ? "hold" : "FAIL") << "\n";
  return glue.passed() && q.passed() ? 0 : 1;
}
