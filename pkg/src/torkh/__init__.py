"""Homotopical Khovanov homology of links in the thickened torus.

Submodules:
    torus_diagram    PL diagrams on the torus, validation, resolutions
    khovanov         chain complex, gradings and integral homology
    config_analysis  decorated resolution configurations and multiplicities
    moduli           pairings, matchings and boundary graphs of moduli spaces
    cli              command line front end
"""

__version__ = "0.1.0"
