#include "saddle/system_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "saddle/errors.hpp"
#include "saddle/matrix_market.hpp"

namespace saddle {

void write_system(const std::filesystem::path& dir, const SaddlePointSystem& s) {
  std::filesystem::create_directories(dir);
  write_matrix_market(dir / "A.mtx", s.a(), MatrixMarketSymmetry::Symmetric);
  write_matrix_market(dir / "B.mtx", s.b());
  write_matrix_market(dir / "C.mtx", s.c());
  write_matrix_market_vector(dir / "f.mtx", s.f());
  write_matrix_market_vector(dir / "g.mtx", s.g());
  write_matrix_market_vector(dir / "h.mtx", s.h());
  nlohmann::json manifest = {
      {"n", s.n()},
      {"m", s.m()},
      {"l", s.l()},
      {"form", s.form() == Form::Symmetric ? "symmetric" : "nonsymmetric"},
  };
  std::ofstream out(dir / "manifest.json");
  if (!out) throw std::runtime_error("write_system: cannot write manifest in " + dir.string());
  out << manifest.dump(2) << '\n';
}

SaddlePointSystem read_system(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw std::runtime_error("read_system: missing manifest.json in " + dir.string());
  nlohmann::json manifest = nlohmann::json::parse(in);
  std::string form_tag = manifest.at("form").get<std::string>();
  Form form;
  if (form_tag == "symmetric") {
    form = Form::Symmetric;
  } else if (form_tag == "nonsymmetric") {
    form = Form::Nonsymmetric;
  } else {
    throw std::runtime_error("read_system: unknown form tag '" + form_tag + "'");
  }
  SaddlePointSystem s = assemble(read_matrix_market(dir / "A.mtx"), read_matrix_market(dir / "B.mtx"),
                                 read_matrix_market(dir / "C.mtx"),
                                 read_matrix_market_vector(dir / "f.mtx"),
                                 read_matrix_market_vector(dir / "g.mtx"),
                                 read_matrix_market_vector(dir / "h.mtx"), form);
  if (s.n() != manifest.at("n").get<Index>() || s.m() != manifest.at("m").get<Index>() ||
      s.l() != manifest.at("l").get<Index>()) {
    throw DimensionError("read_system: manifest dimensions disagree with the stored blocks");
  }
  return s;
}

}  // namespace saddle
