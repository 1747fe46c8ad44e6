"""Provides a dynamic module loading system, allowing one to load function
modules by path.

There are two methods:

- `load`: Loads a module by path, optionally providing a definitions dictionary
  which will be accessible during the load.
- `definitions`: A function which will return the currently-set definitions
  dictionary when called from within a module being imported.  Definitions are
  stored on a stack, and the definitions corresponding to the current `load`
  call are returned by this function.  If called outside of a load call, this
  method returns None.

The command line front end uses this to accept user-written function handles:
a function module reads run parameters (such as `dim`) through `definitions()`
and exports a vectorized callable named `function`.
"""


# System imports
import threading
import importlib.util
from uuid import uuid4


# Create a thread-local variable to track the current loading definitions
_thread_local = threading.local()


# Utility function to get the current thread's definitions stack
def _definitions_stack():
    if not hasattr(_thread_local, 'definitions'):
        _thread_local.definitions = []
    return _thread_local.definitions


def definitions():
    """Returns the currently-set variables dictionary when called from within
    the module being loaded.
    """
    stack = _definitions_stack()
    if len(stack) == 0:
        return None
    return stack[-1]


def _load_module(path):
    spec = importlib.util.spec_from_file_location(uuid4().hex, path)
    if spec is None or spec.loader is None:
        raise ValueError('unable to load module from {0}'.format(path))
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def load(path, definitions = None):
    """Loads a Python module by path.

    Args:
        path: The path to the .py file
        definitions: A Python dictionary object which will be accessible during
            the module load via the mvlab.module.definitions method.

    Returns:
        The module object.
    """
    # Set definitions
    stack = _definitions_stack()
    stack.append({} if definitions is None else dict(definitions))

    # Load the module
    try:
        result = _load_module(path)
    finally:
        stack.pop()

    # All done
    return result


def load_function(path, definitions = None):
    """Loads a function module and returns its exported `function` callable.

    Args:
        path: The path to the .py file
        definitions: The definitions dictionary to expose during the load

    Returns:
        The callable exported under the name `function`.
    """
    module = load(path, definitions)
    function = getattr(module, 'function', None)
    if function is None or not callable(function):
        raise ValueError('function module {0} must export a callable named '
                         '"function"'.format(path))
    return function
