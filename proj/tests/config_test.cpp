#include "doctest.h"
#include "ngramhash/config.hpp"

#include <stdexcept>

using namespace ngram;

TEST_CASE("scheme names") {
  for (auto s : {Scheme::ThreeWise, Scheme::KarpRabin, Scheme::General, Scheme::RamBufferedGeneral, Scheme::Cyclic,
                 Scheme::TruncatedCyclic}) {
    CHECK(parse_scheme(scheme_name(s)) == s);
  }
  CHECK(parse_scheme("ID37") == Scheme::KarpRabin);
  CHECK(parse_scheme("truncated-cyclic") == Scheme::TruncatedCyclic);
  CHECK_THROWS_AS(parse_scheme("sha1"), std::invalid_argument);
  CHECK(is_recursive(Scheme::Cyclic));
  CHECK_FALSE(is_recursive(Scheme::ThreeWise));
  CHECK_FALSE(is_recursive(Scheme::TruncatedCyclic));
}

TEST_CASE("validation") {
  HasherConfig cfg;
  cfg.scheme = Scheme::General;
  cfg.width = 3;
  cfg.n = 4;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);  // L < n
  cfg.n = 2;
  cfg.validate();
  CHECK(cfg.modulus().poly() == GF2Poly{0b1011});
  cfg.poly = GF2Poly{0b1001};  // x^3+1 is reducible
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.poly = GF2Poly{0b111};  // wrong degree
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  HasherConfig ram;
  ram.scheme = Scheme::RamBufferedGeneral;
  ram.width = 8;
  ram.n = 3;
  ram.k_split = 2;
  CHECK_THROWS_AS(ram.validate(), std::invalid_argument);
  ram.k_split = 3;
  ram.validate();

  HasherConfig cyc;
  cyc.scheme = Scheme::Cyclic;
  cyc.width = 4;
  cyc.n = 5;
  CHECK_THROWS_AS(cyc.validate(), std::invalid_argument);

  HasherConfig tr;
  tr.scheme = Scheme::TruncatedCyclic;
  tr.width = 4;
  tr.n = 2;
  CHECK(tr.output_width() == 3);
  CHECK(tr.effective_drop_offset() == 3);
  tr.drop_offset = 4;
  CHECK_THROWS_AS(tr.validate(), std::invalid_argument);

  HasherConfig kr;
  kr.scheme = Scheme::KarpRabin;
  kr.width = 64;
  CHECK_THROWS_AS(kr.validate(), std::invalid_argument);
  kr.width = 4;
  kr.n = 0;
  CHECK_THROWS_AS(kr.validate(), std::invalid_argument);
  kr.n = 20;  // Karp-Rabin has no L >= n requirement
  kr.validate();
}

TEST_CASE("key=value text form") {
  HasherConfig cfg;
  cfg.scheme = Scheme::RamBufferedGeneral;
  cfg.n = 4;
  cfg.width = 19;
  cfg.k_split = 2;
  cfg.seed = 12345;
  const auto text = cfg.to_text();
  CHECK(text.find("p=0x80027") != std::string::npos);
  const auto back = HasherConfig::from_text(text);
  CHECK(back.scheme == cfg.scheme);
  CHECK(back.n == 4);
  CHECK(back.k_split == 2);
  CHECK(back.seed == 12345);
  CHECK(back.to_text() == text);

  const auto kr = HasherConfig::from_text("# id37\nscheme = karprabin\nn=3\nL=16\nB=0x25\n");
  CHECK(kr.base == 37);
  CHECK_THROWS_AS(HasherConfig::from_text("scheme=cyclic\nbogus=1\n"), std::invalid_argument);
  CHECK_THROWS_AS(HasherConfig::from_text("n=abc\n"), std::invalid_argument);
  CHECK_THROWS_AS(HasherConfig::from_text("scheme=cyclic\nn=30\nL=10\n"), std::invalid_argument);
}
