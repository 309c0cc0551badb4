"""Exact-arithmetic census of flat SO(3) orbifold connections on T^7/Gamma.

Modules cover the G2 exterior algebra (forms), quaternion and
hyperkaehler quotient checks (quaternions), the orbifold group and its
singular set (orbifold), the holonomy census (census), the symmetry
group and orbit counting (symmetry), and the ALE index character sum
(aleindex).  The cli module wires them into the g2census command.
"""

__version__ = "0.1.0"
