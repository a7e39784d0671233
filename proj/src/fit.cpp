#include "corrbiplot/fit.hpp"

namespace corrbiplot {

std::string method_name(Method m) {
  switch (m) {
    case Method::pca: return "pca";
    case Method::svd_overall: return "svd-o";
    case Method::svd_column: return "svd-c";
    case Method::svd_double: return "svd-dc";
    case Method::pfa: return "pfa";
    case Method::wals_null: return "wals-null";
    case Method::wals_delta: return "wals-delta";
    case Method::wals_q_sym: return "wals-q-sym";
    case Method::wals_q: return "wals-q";
    case Method::wals_p_q: return "wals-p-q";
  }
  return "?";
}

std::optional<Method> method_from_name(const std::string& name) {
  for (Method m : {Method::pca, Method::svd_overall, Method::svd_column, Method::svd_double,
                   Method::pfa, Method::wals_null, Method::wals_delta, Method::wals_q_sym,
                   Method::wals_q, Method::wals_p_q})
    if (method_name(m) == name) return m;
  return std::nullopt;
}

}  // namespace corrbiplot
