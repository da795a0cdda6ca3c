"""Class-model metrics: coupling and cohesion analysis for object-oriented code.

The heavy lifting lives in the compiled ``_ckm`` extension; this package
re-exports its surface. Typical use::

    import ckm

    model = ckm.analyze_paths(["path/to/sources"])
    for row in ckm.compute_all(model):
        print(row["class"], row["cbo"], row["lcom2"])

    print(ckm.report(model, format="table"))
"""

from ._ckm import (
    AnalysisError,
    ArgumentError,
    ClassModel,
    ConfigError,
    Error,
    GenerationError,
    ModelParseError,
    NotFoundError,
    ValidationError,
    __version__,
    afferent_coupling,
    analyze_paths,
    compute_all,
    coupling_between_objects,
    dependency_edges,
    depth_of_inheritance,
    efferent_coupling,
    export_model,
    generate,
    import_model,
    lcom1,
    lcom2,
    lcom3,
    lcom4,
    package_coupling,
    report,
    response_for_class,
    spearman,
    validate,
)

__all__ = [
    "AnalysisError",
    "ArgumentError",
    "ClassModel",
    "ConfigError",
    "Error",
    "GenerationError",
    "ModelParseError",
    "NotFoundError",
    "ValidationError",
    "__version__",
    "afferent_coupling",
    "analyze_paths",
    "compute_all",
    "coupling_between_objects",
    "dependency_edges",
    "depth_of_inheritance",
    "efferent_coupling",
    "export_model",
    "generate",
    "import_model",
    "lcom1",
    "lcom2",
    "lcom3",
    "lcom4",
    "package_coupling",
    "report",
    "response_for_class",
    "spearman",
    "validate",
]
