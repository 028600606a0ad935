"""Shipped run configurations, loadable by name through :func:`isoruled.config.load_config`."""
