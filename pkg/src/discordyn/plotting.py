"""Static line plots of the measure curves (file output only)."""

import os
import tempfile

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def plot_series(series, path, title=None):
    """Render discord (dashed) and EoF (solid) against gamma0 t.

    The format follows the file extension (.svg for the command-line layer).
    Writing is atomic: a sibling temporary file is renamed into place.
    """
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(series.t, series.d, "k--", label="discord")
    ax.plot(series.t, series.e, "b-", label="EoF")
    ax.set_xlabel(r"$\gamma_0 t$")
    ax.set_ylabel("correlation")
    ax.set_ylim(bottom=0.0)
    if title:
        ax.set_title(title)
    ax.legend(frameon=False)
    fig.tight_layout()

    path = os.fspath(path)
    suffix = os.path.splitext(path)[1] or ".svg"
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(suffix=suffix, dir=directory)
    try:
        os.close(fd)
        fig.savefig(tmp)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    finally:
        plt.close(fig)
