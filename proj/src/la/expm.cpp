#include "dsk/la/expm.hpp"

#include <cmath>

namespace dsk {

double norm1(const DenseMatrix& a) {
  return a.cols() == 0 ? 0.0 : a.cwiseAbs().colwise().sum().maxCoeff();
}

DenseMatrix expm(const DenseMatrix& m_mat) {
  const Index n = m_mat.rows();
  if (m_mat.cols() != n) throw DimensionMismatch("expm: matrix must be square");
  if (!m_mat.allFinite()) throw InvalidArgument("expm: non-finite entry");
  if (n == 0) return m_mat;

  // Padé [13/13] coefficients and the scaling threshold theta_13.
  static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const double nrm = norm1(m_mat);
  int squarings = 0;
  if (nrm > theta13) squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
  const DenseMatrix a = m_mat / std::ldexp(1.0, squarings);

  const DenseMatrix ident = DenseMatrix::Identity(n, n);
  const DenseMatrix a2 = a * a;
  const DenseMatrix a4 = a2 * a2;
  const DenseMatrix a6 = a4 * a2;
  DenseMatrix inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
  DenseMatrix u = a6 * inner;
  u += b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident;
  u = a * u;
  inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
  DenseMatrix v = a6 * inner;
  v += b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;

  DenseMatrix x = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) x = x * x;
  if (!x.allFinite()) throw Overflow("expm: result exceeds the floating-point range");
  return x;
}

}  // namespace dsk
