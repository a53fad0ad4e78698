#include "lqp/forms/io.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "lqp/error.hpp"

namespace lqp::forms {

using geometry::ChartDomain;
using geometry::DomainKind;

namespace {

constexpr const char* magic = "lqp-form";
constexpr int format_version = 1;

std::string next_line(std::istream& in, const char* key) {
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') break;
  require(in.good() || !line.empty(), ErrorCode::io_error, std::string("missing '") + key + "' line");
  std::istringstream ls(line);
  std::string word;
  ls >> word;
  require(word == key, ErrorCode::io_error, "expected '" + std::string(key) + "', found '" + word + "'");
  std::string rest;
  std::getline(ls, rest);
  return rest;
}

}  // namespace

void write_text(std::ostream& out, const DifferentialForm& form) {
  require(form.is_sampled(), ErrorCode::invalid_argument, "only sampled forms serialize");
  const SampledData& data = form.samples();
  const geometry::Grid& grid = *data.grid;
  const ChartDomain& d = grid.domain();
  const int n = d.dim();
  out << std::setprecision(17);
  out << magic << ' ' << format_version << '\n';
  out << "domain " << geometry::to_string(d.kind()) << ' ' << n;
  switch (d.kind()) {
    case DomainKind::interval: out << ' ' << d.lower()[0] << ' ' << d.lower()[0] + d.lengths()[0]; break;
    case DomainKind::circle: out << ' ' << d.lengths()[0]; break;
    case DomainKind::torus:
      for (double l : d.lengths()) out << ' ' << l;
      break;
    case DomainKind::ball: out << ' ' << d.radius(); break;
    case DomainKind::halfplane:
      out << ' ' << d.lengths()[0] / 2 << ' ' << d.lower()[1] << ' ' << d.lower()[1] + d.lengths()[1];
      break;
  }
  out << '\n';
  const auto& axes = grid.axes();
  out << "resolution";
  for (const auto& a : axes) out << ' ' << a.nodes.size();
  out << '\n';
  if (d.kind() != DomainKind::ball && axes[0].panel_order > 0)
    out << "rule gauss " << axes[0].panel_order << '\n';
  else
    out << "rule trapezoid\n";
  if (grid.grading()) out << "grading " << *grid.grading() << '\n';
  out << "degree " << form.degree() << '\n';
  out << "interpolation " << data.interpolation_order << '\n';
  out << "channels";
  for (Mask m : basis(n, form.degree())) out << ' ' << label(m);
  out << '\n';
  for (const auto& o : data.offsets) {
    out << "offset";
    for (int a = 0; a < n; ++a) out << ' ' << o[a];
    out << '\n';
  }
  out << "values " << data.values.size() << '\n';
  for (double v : data.values) out << v << '\n';
}

DifferentialForm read_text(std::istream& in) {
  std::string word;
  int version = 0;
  in >> word >> version;
  require(word == magic && version == format_version, ErrorCode::io_error, "not an lqp-form v1 stream");
  std::istringstream dom(next_line(in, "domain"));
  std::string kind;
  int n = 0;
  dom >> kind >> n;
  require(n >= 1 && n <= max_dim, ErrorCode::io_error, "bad dimension in header");
  auto domain = [&]() -> ChartDomain {
    if (kind == "interval") { double a, b; dom >> a >> b; return ChartDomain::interval(a, b); }
    if (kind == "circle") { double l; dom >> l; return ChartDomain::circle(l); }
    if (kind == "torus") {
      std::vector<double> l(n);
      for (auto& v : l) dom >> v;
      return ChartDomain::torus(l);
    }
    if (kind == "ball") { double r; dom >> r; return ChartDomain::ball(n, r); }
    if (kind == "halfplane") { double y, z0, z1; dom >> y >> z0 >> z1; return ChartDomain::halfplane(y, z0, z1); }
    fail(ErrorCode::io_error, "unknown domain kind '" + kind + "'");
  }();
  require(!dom.fail(), ErrorCode::io_error, "malformed domain line");

  geometry::GridOptions options;
  std::istringstream res(next_line(in, "resolution"));
  int r;
  while (res >> r) options.resolution.push_back(r);
  std::istringstream rule(next_line(in, "rule"));
  std::string rule_name;
  rule >> rule_name;
  if (rule_name == "gauss") {
    options.rule = geometry::QuadratureRule::gauss;
    rule >> options.gauss_order;
  }
  std::string line;
  std::streampos mark = in.tellg();
  std::getline(in, line);
  if (line.rfind("grading", 0) == 0) {
    options.grading = std::stod(line.substr(7));
  } else {
    in.seekg(mark);
  }
  const int k = std::stoi(next_line(in, "degree"));
  const int order = std::stoi(next_line(in, "interpolation"));
  next_line(in, "channels");
  const int channels = binomial(n, k);
  auto grid = std::make_shared<const geometry::Grid>(geometry::build_grid(domain, options));
  SampledData data{grid, {}, order, {}};
  for (int c = 0; c < channels; ++c) {
    std::istringstream os(next_line(in, "offset"));
    std::array<double, max_dim> o{};
    for (int a = 0; a < n; ++a) os >> o[a];
    data.offsets.push_back(o);
  }
  const std::size_t count = std::stoul(next_line(in, "values"));
  require(count == channels * grid->size(), ErrorCode::io_error, "value count does not match header");
  data.values.resize(count);
  for (auto& v : data.values) in >> v;
  require(!in.fail(), ErrorCode::io_error, "truncated value block");
  return DifferentialForm::sampled(k, std::move(data));
}

}  // namespace lqp::forms
