from atelier.invlib import setup_from_tasks
ns = setup_from_tasks(
    globals(), "inrecon",
    revision_control_system='git')
