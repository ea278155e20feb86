#pragma once

#include "multicat/magma.hpp"

namespace multicat::fixtures {

/// One square A at (1,2): s_1 A = e1, t_1 A = e2 (color (2)), s_2 A = e3,
/// t_2 A = e4 (color (1)), corners p00, p10, p01, p11. D = N = 2.
MultipleSet square();

/// square() with t_2(e1) rewired to p10, breaking exactly one ST instance.
MultipleSet square_broken_st();

/// One object p with D = N = 2.
MultipleSet point();

/// Edges y : a -> b and x : b -> c at color (1), so x o_1 y is defined. D = N = 1.
MultipleSet path2();

/// Two edges alpha, beta : a -> b at color (1). D = N = 2.
MultipleSet parallel_edges();

/// One cell "*" at every color within bounds.
MultipleSet terminal(int universe_bound, int dim_bound);

/// cols x rows squares q<x>_<y>, composable along 1 in x and along 2 in y.
MultipleSet grid(int cols, int rows);

/// The codiscrete strict multiple groupoid on n objects (n <= 10): a cell is
/// a labelling of the corners of its cube by objects.
StrictCategory codiscrete(int objects, int universe_bound, int dim_bound);

/// One object and loops {e, g} at color (1) under the group of order 2. D = N = 1.
StrictCategory z2_loop();

/// Objects a, b and one non-identity arrow f : a -> b at color (1). D = N = 1.
StrictCategory arrow();

/// Strict category of a single object with identity cells only.
StrictCategory discrete_point(int universe_bound, int dim_bound);

}  // namespace multicat::fixtures
