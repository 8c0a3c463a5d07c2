#include "excone/fixtures.hpp"

namespace excone::fixtures {

namespace {

ExactSymMatrix parse_upper(int n, const std::vector<const char*>& upper) {
  std::vector<QSqrt2> v;
  v.reserve(upper.size());
  for (const char* s : upper) v.push_back(QSqrt2::parse(s));
  return ExactSymMatrix::from_upper(n, std::move(v));
}

}  // namespace

FourierCoeffs seed_coeffs() {
  FourierCoeffs f;
  for (const char* s : {"16/27", "1/123", "1/294", "5/21", "4/29",
                        "-2440263/3254580+1777340/3254580*sqrt2"})
    f.a.push_back(QSqrt2::parse(s));
  return f;
}

ExactSymMatrix seed_matrix() {
  return parse_upper(
      5, {
             // row 1
             "1", "16/27*sqrt2", "1/123*sqrt2", "1/294*sqrt2", "5/21*sqrt2",
             // row 2
             "124/123", "1577/2646", "212/861", "1205/8526",
             // row 3
             "26/21", "572/783", "-2413803/3254580+1777340/3254580*sqrt2",
             // row 4
             "814317/3254580+1777340/3254580*sqrt2", "16/27",
             // row 5
             "1",
         });
}

ExactSymMatrix seed_gram() {
  return parse_upper(
      4, {
             // row 1
             "9/22", "7/37", "-3/22", "-206923/5678316",
             // row 2
             "336929/243540-88867/162729*sqrt2", "2210/28971",
             "-200129/487080+88867/325458*sqrt2",
             // row 3
             "46466763/35800380-19550740/35800380*sqrt2", "4/29",
             // row 4
             "-2440263/1627290+1777340/1627290*sqrt2",
         });
}

ExactSymMatrix ecop_matrix() {
  return parse_upper(5, {
                            // row 1
                            "17", "-91/5", "33/2", "38/3", "-36/5",
                            // row 2
                            "59/3", "-53/4", "8", "33/4",
                            // row 3
                            "39/4", "-13/2", "8",
                            // row 4
                            "16/3", "-13/3",
                            // row 5
                            "1373628701/353935575",
                        });
}

}  // namespace excone::fixtures
