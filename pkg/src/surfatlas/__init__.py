"""Tessellated surfaces built from finite groups.

For a finite nonabelian group G every noncommuting ordered pair (x, y)
spans a triangle with corners (x,1), (y,1), (xy,2).  Gluing these triangles
along three fixed adjacency rules yields a disjoint union of closed,
oriented surfaces with face- and edge-transitive cell structures.  This
package builds that complex, tabulates its components, and checks the
branched-covering and symmetry properties exactly.
"""

__version__ = "0.1.0"
