"""True-concurrency workbench: process normal forms, step bisimulation and
an imperative parallel language with operational, denotational and Hoare
semantics."""

__version__ = "0.1.0"
