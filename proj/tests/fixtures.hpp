#pragma once

#include "artin/pcgroup.hpp"

// hand-written presentations of the three smallest groups in play
inline artin::PcGroup fx_elementary_33() {
  artin::PcGroup g(3, 2, {1, 1});
  g.rebuild_flags();
  artin::recover_definitions(g);
  return g;
}

inline artin::PcGroup fx_heisenberg27() {
  artin::PcGroup g(3, 3, {1, 1, 2});
  g.comm_rhs(2, 1).syl = {{3, 1}};
  g.rebuild_flags();
  artin::recover_definitions(g);
  return g;
}

inline artin::PcGroup fx_extraspecial27() {
  artin::PcGroup g(3, 3, {1, 1, 2});
  g.power_rhs(1).syl = {{3, 1}};
  g.comm_rhs(2, 1).syl = {{3, 1}};
  g.rebuild_flags();
  artin::recover_definitions(g);
  return g;
}
