"""Core application components"""