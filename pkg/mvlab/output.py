"""Some simple output routines.
"""


# System imports
import os
import sys
import tempfile


def print_info(message):
    print(message)


def print_warning(message):
    print('warning: {}'.format(message), file = sys.stderr)


def print_error(message):
    print('error: {}'.format(message), file = sys.stderr)


def print_fatal(message, status = 2):
    print('fatal: {}'.format(message), file = sys.stderr)
    sys.exit(status)


def atomic_write(path, text):
    """Writes text to a file so that readers either see the previous contents
    or the complete new contents, never a partial write.

    The text is written to a temporary file in the destination directory,
    flushed to disk, and then renamed over the destination.

    Args:
        path: The destination path
        text: The string to write
    """
    # Create the temporary file next to the destination so that the rename
    # stays on one filesystem
    directory = os.path.dirname(os.path.abspath(path))
    descriptor, temporary_path = tempfile.mkstemp(
        prefix = '.{0}.'.format(os.path.basename(path)),
        suffix = '.tmp',
        dir = directory
    )

    # Write and rename, cleaning up on any failure
    try:
        with os.fdopen(descriptor, 'w') as temporary_file:
            temporary_file.write(text)
            temporary_file.flush()
            os.fsync(temporary_file.fileno())
        os.replace(temporary_path, path)
    except:
        if os.path.exists(temporary_path):
            os.remove(temporary_path)
        raise
